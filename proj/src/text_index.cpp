#include "srr/text_index.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace srr {

namespace {

// Prefix-doubling suffix array over bytes, two stable counting passes per
// round. Returns 0-based start positions in lexicographic suffix order.
std::vector<uint32_t> build_suffix_array(const std::string& s) {
  const uint32_t n = static_cast<uint32_t>(s.size());
  std::vector<uint32_t> sa(n), rank(n), tmp(n), cnt;

  cnt.assign(257, 0);
  for (unsigned char c : s) cnt[c + 1]++;
  for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
  for (uint32_t i = 0; i < n; ++i)
    sa[cnt[static_cast<unsigned char>(s[i])]++] = i;
  rank[sa[0]] = 0;
  for (uint32_t j = 1; j < n; ++j)
    rank[sa[j]] = rank[sa[j - 1]] + (s[sa[j]] != s[sa[j - 1]] ? 1 : 0);

  std::vector<uint32_t> key2(n), by2(n);
  for (uint32_t k = 1; k < n && rank[sa[n - 1]] + 1 < n; k <<= 1) {
    for (uint32_t i = 0; i < n; ++i)
      key2[i] = i + k < n ? rank[i + k] + 1 : 0;

    cnt.assign(n + 2, 0);
    for (uint32_t i = 0; i < n; ++i) cnt[key2[i] + 1]++;
    for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
    for (uint32_t i = 0; i < n; ++i) by2[cnt[key2[i]]++] = i;

    cnt.assign(n + 1, 0);
    for (uint32_t i = 0; i < n; ++i) cnt[rank[i] + 1]++;
    for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
    for (uint32_t i : by2) sa[cnt[rank[i]]++] = i;

    tmp[sa[0]] = 0;
    for (uint32_t j = 1; j < n; ++j) {
      const bool differ = rank[sa[j]] != rank[sa[j - 1]] ||
                          key2[sa[j]] != key2[sa[j - 1]];
      tmp[sa[j]] = tmp[sa[j - 1]] + (differ ? 1 : 0);
    }
    rank.swap(tmp);
  }
  return sa;
}

}  // namespace

// Emits occurrences in text order by splitting suffix-rank intervals at
// their minimum position. Matches the successor-walk sequence exactly.
class SplitStream final : public PointStream {
 public:
  // lo, hi are 0-based inclusive indices into the suffix array.
  SplitStream(const TextIndex* t, uint32_t lo, uint32_t hi) : t_(t) {
    push_interval(lo, hi);
  }

  std::optional<Point> next() override {
    if (heap_.empty()) return std::nullopt;
    const Entry e = heap_.top();
    heap_.pop();
    if (e.at > e.lo) push_interval(e.lo, e.at - 1);
    if (e.at < e.hi) push_interval(e.at + 1, e.hi);
    const int64_t pos = t_->sa_[e.at];
    return Point{pos, static_cast<int64_t>(e.at) + 1,
                 static_cast<uint32_t>(pos - 1)};
  }

  const QueryStats& stats() const override { return stats_; }

 private:
  struct Entry {
    int64_t pos;  // minimum position inside [lo, hi]
    uint32_t at;  // index attaining it
    uint32_t lo, hi;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.pos > b.pos;
    }
  };

  void push_interval(uint32_t lo, uint32_t hi) {
    stats_.probes.rmq_probes++;
    const uint32_t at = t_->sa_rmq_->min_index(lo, hi);
    heap_.push({static_cast<int64_t>(t_->sa_[at]), at, lo, hi});
  }

  const TextIndex* t_;
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  QueryStats stats_;
};

TextIndex TextIndex::build(std::string text) {
  if (text.empty()) throw std::invalid_argument("text index: empty text");
  TextIndex t;
  t.text_ = std::move(text);
  const uint32_t n = static_cast<uint32_t>(t.text_.size());

  const auto sa0 = build_suffix_array(t.text_);
  t.sa_.resize(n);
  t.rank_.resize(n);
  for (uint32_t j = 0; j < n; ++j) {
    t.sa_[j] = sa0[j] + 1;
    t.rank_[sa0[j]] = j + 1;
  }

  std::vector<Point> pos_set(n);
  for (uint32_t p = 1; p <= n; ++p)
    pos_set[p - 1] = Point{p, t.rank_[p - 1], p - 1};
  t.pos_index_ = SuccessorIndex::build_rank_space(pos_set);
  t.sa_rmq_ = std::make_unique<RangeMinMax<uint32_t>>(t.sa_);
  return t;
}

int TextIndex::suffix_compare(uint32_t pos, std::string_view p) const {
  const size_t n = text_.size();
  for (size_t i = 0; i < p.size(); ++i) {
    const size_t at = pos - 1 + i;
    if (at >= n) return -1;  // proper prefix of p: sorts below
    const auto a = static_cast<unsigned char>(text_[at]);
    const auto b = static_cast<unsigned char>(p[i]);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

std::optional<std::pair<uint32_t, uint32_t>> TextIndex::pattern_range(
    std::string_view p) const {
  const uint32_t n = static_cast<uint32_t>(text_.size());
  if (p.empty()) return std::pair<uint32_t, uint32_t>{1, n};
  uint32_t lo = 0, hi = n;
  while (lo < hi) {
    const uint32_t mid = lo + (hi - lo) / 2;
    if (suffix_compare(sa_[mid], p) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  const uint32_t first = lo;
  hi = n;
  while (lo < hi) {
    const uint32_t mid = lo + (hi - lo) / 2;
    if (suffix_compare(sa_[mid], p) <= 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (first == lo) return std::nullopt;
  return std::pair<uint32_t, uint32_t>{first + 1, lo};
}

std::optional<uint32_t> TextIndex::first_in_range(uint32_t lo_rank,
                                                  uint32_t hi_rank,
                                                  int64_t from) const {
  const auto p = pos_index_.successor(std::max<int64_t>(from, 1), lo_rank,
                                      hi_rank, nullptr);
  if (!p) return std::nullopt;
  return static_cast<uint32_t>(p->x);
}

std::optional<uint32_t> TextIndex::first_occurrence(std::string_view p,
                                                    uint32_t from) const {
  if (p.empty()) throw std::invalid_argument("text index: empty pattern");
  const auto range = pattern_range(p);
  if (!range) return std::nullopt;
  return first_in_range(range->first, range->second, from);
}

SortedIterator TextIndex::occurrences(std::string_view p) const {
  if (p.empty()) throw std::invalid_argument("text index: empty pattern");
  const auto range = pattern_range(p);
  if (!range) return empty_iterator();
  QueryRect q;
  q.y_lo = range->first;
  q.y_hi = range->second;
  return pos_index_.sorted(q);
}

SortedIterator TextIndex::occurrences_by_splitting(std::string_view p) const {
  if (p.empty()) throw std::invalid_argument("text index: empty pattern");
  const auto range = pattern_range(p);
  if (!range) return empty_iterator();
  return SortedIterator(
      std::make_unique<SplitStream>(this, range->first - 1, range->second - 1));
}

SortedIterator TextIndex::position_restricted(std::string_view p, uint32_t lo,
                                              uint32_t hi) const {
  if (p.empty()) throw std::invalid_argument("text index: empty pattern");
  const auto range = pattern_range(p);
  if (!range) return empty_iterator();
  QueryRect q;
  q.x_lo = std::max<int64_t>(lo, 1);
  q.x_hi = static_cast<int64_t>(hi);
  q.y_lo = range->first;
  q.y_hi = range->second;
  if (*q.x_hi < *q.x_lo) return empty_iterator();
  return pos_index_.sorted(q);
}

std::vector<uint32_t> TextIndex::non_overlapping(std::string_view p) const {
  if (p.empty()) throw std::invalid_argument("text index: empty pattern");
  std::vector<uint32_t> out;
  const auto range = pattern_range(p);
  if (!range) return out;
  int64_t from = 1;
  while (const auto occ = first_in_range(range->first, range->second, from)) {
    out.push_back(*occ);
    from = static_cast<int64_t>(*occ) + static_cast<int64_t>(p.size());
  }
  return out;
}

std::optional<std::vector<uint32_t>> TextIndex::leftmost_chain(
    std::span<const std::string> parts) const {
  if (parts.empty())
    throw std::invalid_argument("text index: chain needs at least one part");
  std::vector<uint32_t> out;
  out.reserve(parts.size());
  int64_t from = 1;
  for (const std::string& part : parts) {
    if (part.empty())
      throw std::invalid_argument("text index: empty chain part");
    if (from > static_cast<int64_t>(text_.size())) return std::nullopt;
    const auto occ = first_occurrence(part, static_cast<uint32_t>(from));
    if (!occ) return std::nullopt;
    out.push_back(*occ);
    from = static_cast<int64_t>(*occ) + static_cast<int64_t>(part.size());
  }
  return out;
}

size_t TextIndex::memory_bytes() const {
  size_t bytes = text_.size() + (sa_.size() + rank_.size()) * sizeof(uint32_t);
  bytes += pos_index_.memory_bytes();
  if (sa_rmq_) bytes += sa_rmq_->memory_bytes();
  return bytes;
}

std::vector<uint32_t> naive_occurrences(std::string_view text,
                                        std::string_view p) {
  std::vector<uint32_t> out;
  if (p.empty() || p.size() > text.size()) return out;
  for (size_t s = 0; s + p.size() <= text.size(); ++s)
    if (text.compare(s, p.size(), p) == 0)
      out.push_back(static_cast<uint32_t>(s) + 1);
  return out;
}

std::vector<uint32_t> naive_non_overlapping(std::string_view text,
                                            std::string_view p) {
  std::vector<uint32_t> out;
  if (p.empty()) return out;
  size_t s = 0;
  while (s + p.size() <= text.size()) {
    if (text.compare(s, p.size(), p) == 0) {
      out.push_back(static_cast<uint32_t>(s) + 1);
      s += p.size();
    } else {
      ++s;
    }
  }
  return out;
}

std::optional<std::vector<uint32_t>> naive_leftmost_chain(
    std::string_view text, std::span<const std::string> parts) {
  std::vector<uint32_t> out;
  size_t from = 0;
  for (const auto& part : parts) {
    const size_t at = text.find(part, from);
    if (at == std::string_view::npos) return std::nullopt;
    out.push_back(static_cast<uint32_t>(at) + 1);
    from = at + part.size();
  }
  return out;
}

}  // namespace srr
