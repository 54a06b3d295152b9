#include "srr/one_sided.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <utility>

#include "srr/util.hpp"

namespace srr {

namespace {
constexpr uint32_t kNoIdx = 0xffffffffu;
}  // namespace

// Streams the members below the line in ascending x. Serves the per-point
// list of the topmost member first; if the consumer outruns it, opens the
// segment-tree merge and discards exactly the prefix already served (both
// paths emit the same sequence).
class OneSidedStream final : public PointStream {
 public:
  OneSidedStream(const OneSidedIndex* o, std::optional<uint32_t> idx,
                 bool with_v_list, QueryStats boot)
      : o_(o), idx_(idx.value_or(kNoIdx)), use_v_(with_v_list), stats_(boot) {
    if (idx_ == kNoIdx) {
      use_v_ = false;
    } else if (!use_v_) {
      open_merge(0);
    }
  }

  std::optional<Point> next() override {
    if (idx_ == kNoIdx) return std::nullopt;
    if (use_v_) {
      const uint32_t row_len = o_->v_count_[idx_];
      if (served_ < row_len) {
        const uint32_t member =
            o_->v_entries_[static_cast<size_t>(idx_) * o_->v_len_ + served_];
        ++served_;
        return o_->by_y_[member];
      }
      // Row r holds min(r + 1, v_len) entries, so a row shorter than its
      // prefix count means everything below the line has been served.
      if (row_len == idx_ + 1) return std::nullopt;
      use_v_ = false;
      open_merge(served_);
    }
    return pop();
  }

  const QueryStats& stats() const override { return stats_; }

 private:
  struct Cursor {
    int64_t x;
    uint32_t member;
    uint32_t list;
    uint32_t pos;
  };
  struct Later {
    bool operator()(const Cursor& a, const Cursor& b) const {
      return std::pair(a.x, a.member) > std::pair(b.x, b.member);
    }
  };

  void open_merge(uint32_t skip) {
    std::vector<uint32_t> nodes;
    cover(1, 0, o_->pad_, &nodes);
    heap_.reserve(nodes.size());
    for (uint32_t k : nodes) push_cursor(k, 0);
    for (uint32_t i = 0; i < skip; ++i) pop();
  }

  // Canonical cover of y-indices [0, idx_]: maximal subtrees, left to right.
  void cover(uint32_t k, uint32_t lo, uint32_t hi, std::vector<uint32_t>* out) {
    if (lo > idx_) return;
    if (hi <= idx_ + 1) {
      if (!o_->lists_[k].empty()) out->push_back(k);
      return;
    }
    const uint32_t mid = (lo + hi) / 2;
    cover(2 * k, lo, mid, out);
    cover(2 * k + 1, mid, hi, out);
  }

  void push_cursor(uint32_t list, uint32_t pos) {
    if (pos >= o_->lists_[list].size()) return;
    const uint32_t member = o_->lists_[list][pos];
    heap_.push_back({o_->by_y_[member].x, member, list, pos});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
  }

  std::optional<Point> pop() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    const Cursor c = heap_.back();
    heap_.pop_back();
    push_cursor(c.list, c.pos + 1);
    return o_->by_y_[c.member];
  }

  const OneSidedIndex* o_;
  uint32_t idx_;
  bool use_v_;
  uint32_t served_ = 0;
  std::vector<Cursor> heap_;
  QueryStats stats_;
};

OneSidedIndex::OneSidedIndex(std::vector<Point> pts, Config cfg) {
  if (pts.empty())
    throw std::invalid_argument("one-sided index: empty point set");
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return a.y < b.y; });
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].y == pts[i - 1].y)
      throw std::invalid_argument("one-sided index: duplicate y coordinate");
  by_y_ = std::move(pts);
  const uint32_t m = static_cast<uint32_t>(by_y_.size());
  ys_.resize(m);
  for (uint32_t i = 0; i < m; ++i) ys_[i] = by_y_[i].y;

  v_len_ = cfg.v_len ? cfg.v_len : std::max<uint32_t>(1, ceil_log2(m));
  sm_len_ = cfg.sm_len ? cfg.sm_len
                       : std::max<uint32_t>(
                             1, ceil_log2(std::max<uint64_t>(2, ceil_log2(m))));
  sm_count_ = std::min(m, sm_len_);

  pad_ = 1;
  while (pad_ < m) pad_ <<= 1;
  lists_.assign(2 * static_cast<size_t>(pad_), {});
  for (uint32_t r = 0; r < m; ++r) lists_[pad_ + r] = {r};
  const auto by_x = [this](uint32_t a, uint32_t b) {
    return std::pair(by_y_[a].x, a) < std::pair(by_y_[b].x, b);
  };
  for (uint32_t k = pad_ - 1; k >= 1; --k) {
    const auto& l = lists_[2 * k];
    const auto& r = lists_[2 * k + 1];
    auto& dst = lists_[k];
    dst.reserve(l.size() + r.size());
    std::merge(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(dst),
               by_x);
  }

  v_entries_.assign(static_cast<size_t>(m) * v_len_, kNoIdx);
  v_count_.assign(m, 0);
  std::vector<uint32_t> best;  // ascending x, capped at v_len_
  best.reserve(v_len_ + 1);
  const auto x_less = [this](uint32_t a, uint32_t b) {
    return by_y_[a].x < by_y_[b].x;
  };
  for (uint32_t r = 0; r < m; ++r) {
    best.insert(std::upper_bound(best.begin(), best.end(), r, x_less), r);
    if (best.size() > v_len_) best.pop_back();
    v_count_[r] = static_cast<uint32_t>(best.size());
    std::copy(best.begin(), best.end(),
              v_entries_.begin() + static_cast<size_t>(r) * v_len_);
  }

  locator_ = cfg.locator;
  if (locator_ == Locator::kDirectory) {
    if (ys_.front() < 1)
      throw std::invalid_argument(
          "one-sided index: directory locator needs y >= 1");
    const int64_t uni = cfg.y_universe ? cfg.y_universe : ys_.back();
    if (uni < ys_.back())
      throw std::invalid_argument("one-sided index: y universe below max y");
    dir_ = PredecessorSet(static_cast<size_t>(uni), ys_);
    y_to_idx_.assign(static_cast<size_t>(uni) + 1, kNoIdx);
    for (uint32_t i = 0; i < m; ++i)
      y_to_idx_[static_cast<size_t>(ys_[i])] = i;
  }
}

std::optional<uint32_t> OneSidedIndex::locate(int64_t c,
                                              ProbeCounters* pc) const {
  if (by_y_.empty() || ys_.front() > c) return std::nullopt;
  if (sm_count_ == by_y_.size() || ys_[sm_count_ - 1] > c) {
    uint32_t i = 0;
    while (i + 1 < sm_count_ && ys_[i + 1] <= c) ++i;
    return i;
  }
  if (pc) pc->pred_probes++;
  if (locator_ == Locator::kDirectory) {
    const auto key = dir_.pred(c);
    return y_to_idx_[static_cast<size_t>(*key)];
  }
  const auto it = std::upper_bound(ys_.begin(), ys_.end(), c);
  return static_cast<uint32_t>(it - ys_.begin()) - 1;
}

std::optional<Point> OneSidedIndex::highest_at_or_below(
    int64_t c, ProbeCounters* pc) const {
  const auto idx = locate(c, pc);
  if (!idx) return std::nullopt;
  return by_y_[*idx];
}

SortedIterator OneSidedIndex::stream_from(std::optional<uint32_t> idx,
                                          bool with_v_list,
                                          QueryStats boot) const {
  return SortedIterator(
      std::make_unique<OneSidedStream>(this, idx, with_v_list, boot));
}

SortedIterator OneSidedIndex::iter(int64_t c) const {
  QueryStats boot{};
  const auto idx = locate(c, &boot.probes);
  return stream_from(idx, true, boot);
}

SortedIterator OneSidedIndex::merge_iter(int64_t c) const {
  QueryStats boot{};
  const auto idx = locate(c, &boot.probes);
  return stream_from(idx, false, boot);
}

std::vector<Point> OneSidedIndex::v_list(uint32_t r) const {
  if (r >= by_y_.size())
    throw std::out_of_range("one-sided index: v_list row out of range");
  std::vector<Point> out;
  out.reserve(v_count_[r]);
  for (uint32_t i = 0; i < v_count_[r]; ++i)
    out.push_back(by_y_[v_entries_[static_cast<size_t>(r) * v_len_ + i]]);
  return out;
}

size_t OneSidedIndex::memory_bytes() const {
  size_t bytes = by_y_.size() * sizeof(Point) + ys_.size() * sizeof(int64_t);
  for (const auto& l : lists_) bytes += l.size() * sizeof(uint32_t);
  bytes += lists_.size() * sizeof(std::vector<uint32_t>);
  bytes += (v_entries_.size() + v_count_.size() + y_to_idx_.size()) *
           sizeof(uint32_t);
  bytes += dir_.memory_bytes();
  return bytes;
}

}  // namespace srr
