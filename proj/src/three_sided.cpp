#include "srr/three_sided.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace srr {

namespace {

// Restores original y values on results coming out of the flipped copy.
class UnflipStream final : public PointStream {
 public:
  UnflipStream(SortedIterator inner, int64_t base)
      : inner_(std::move(inner)), base_(base) {}
  std::optional<Point> next() override {
    auto p = inner_.next();
    if (!p) return std::nullopt;
    return Point{p->x, base_ - p->y, p->id};
  }
  const QueryStats& stats() const override { return inner_.stats(); }

 private:
  SortedIterator inner_;
  int64_t base_;
};

}  // namespace

// Concatenates the below-line streams of the cover nodes left to right,
// opening each only when its predecessor is drained.
class ThreeSidedStream final : public PointStream {
 public:
  ThreeSidedStream(const ThreeSidedIndex* o, std::vector<uint32_t> cover,
                   int64_t c)
      : o_(o), cover_(std::move(cover)), c_(c) {}

  std::optional<Point> next() override {
    while (true) {
      if (cur_) {
        auto p = cur_->next();
        if (p) return p;
        folded_.probes.add(cur_->stats().probes);
        folded_.streams_drained++;
        cur_.reset();
      }
      if (pos_ >= cover_.size()) return std::nullopt;
      cur_.emplace(o_->nodes_[cover_[pos_++]].iter(c_));
      folded_.streams_opened++;
    }
  }

  const QueryStats& stats() const override {
    snapshot_ = folded_;
    if (cur_) snapshot_.probes.add(cur_->stats().probes);
    return snapshot_;
  }

 private:
  const ThreeSidedIndex* o_;
  std::vector<uint32_t> cover_;
  int64_t c_;
  size_t pos_ = 0;
  std::optional<SortedIterator> cur_;
  QueryStats folded_;
  mutable QueryStats snapshot_;
};

ThreeSidedIndex ThreeSidedIndex::build(std::span<const Point> original,
                                       Config cfg) {
  ThreeSidedIndex t;
  auto [rank_pts, map] = rank_space_reduce(original);
  t.map_ = std::move(map);
  t.n_ = rank_pts.size();
  t.pad_ = 1;
  t.depth_ = 0;
  while (t.pad_ < t.n_) {
    t.pad_ <<= 1;
    t.depth_++;
  }

  std::vector<std::vector<Point>> node_pts(2 * static_cast<size_t>(t.pad_));
  for (const Point& p : rank_pts)
    node_pts[t.pad_ + static_cast<size_t>(p.x) - 1] = {p};
  for (uint32_t k = t.pad_ - 1; k >= 1; --k) {
    const auto& l = node_pts[2 * k];
    const auto& r = node_pts[2 * k + 1];
    auto& dst = node_pts[k];
    dst.reserve(l.size() + r.size());
    dst.insert(dst.end(), l.begin(), l.end());
    dst.insert(dst.end(), r.begin(), r.end());
  }

  OneSidedIndex::Config oc;
  oc.v_len = cfg.v_len;
  oc.sm_len = cfg.sm_len;
  // Per-node y values are sparse global ranks, so the bucketed directory
  // would be sized for the whole universe at every node.
  oc.locator = OneSidedIndex::Locator::kBinarySearch;
  t.nodes_.resize(node_pts.size());
  for (size_t k = 1; k < node_pts.size(); ++k)
    if (!node_pts[k].empty())
      t.nodes_[k] = OneSidedIndex(std::move(node_pts[k]), oc);

  if (cfg.build_flipped) {
    auto [lo, hi] = std::minmax_element(
        original.begin(), original.end(),
        [](const Point& a, const Point& b) { return a.y < b.y; });
    t.flip_base_ = lo->y + hi->y;
    std::vector<Point> flipped(original.begin(), original.end());
    for (Point& p : flipped) p.y = t.flip_base_ - p.y;
    Config fc = cfg;
    fc.build_flipped = false;
    t.flipped_ = std::make_unique<ThreeSidedIndex>(build(flipped, fc));
  }
  return t;
}

std::vector<uint32_t> ThreeSidedIndex::canonical_cover(uint32_t a,
                                                       uint32_t b) const {
  std::vector<uint32_t> left, right;
  uint32_t l = pad_ + a - 1;
  uint32_t r = pad_ + b;  // half-open
  while (l < r) {
    if (l & 1) left.push_back(l++);
    if (r & 1) right.push_back(--r);
    l >>= 1;
    r >>= 1;
  }
  left.insert(left.end(), right.rbegin(), right.rend());
  std::erase_if(left, [this](uint32_t k) { return nodes_[k].size() == 0; });
  return left;
}

std::unique_ptr<PointStream> ThreeSidedIndex::below_rank_stream(
    int64_t a, int64_t b, int64_t c) const {
  a = std::max<int64_t>(a, 1);
  b = std::min<int64_t>(b, static_cast<int64_t>(n_));
  if (n_ == 0 || a > b || c < 1)
    return std::make_unique<VectorStream>(std::vector<Point>{});
  return std::make_unique<ThreeSidedStream>(
      this,
      canonical_cover(static_cast<uint32_t>(a), static_cast<uint32_t>(b)), c);
}

SortedIterator ThreeSidedIndex::iter(const QueryRect& q) const {
  if (q.y_lo && q.y_hi)
    throw std::invalid_argument("three-sided query: y bounded on both sides");
  if (q.y_lo) {
    if (!flipped_)
      throw std::logic_error(
          "three-sided index: built without support for low-side y bounds");
    QueryRect f{q.x_lo, q.x_hi, std::nullopt, flip_base_ - *q.y_lo};
    return SortedIterator(
        std::make_unique<UnflipStream>(flipped_->iter(f), flip_base_));
  }
  const QueryRect r = map_.reduce(q);
  auto rank_stream =
      below_rank_stream(r.x_lo.value_or(1),
                        r.x_hi.value_or(static_cast<int64_t>(n_)),
                        r.y_hi.value_or(static_cast<int64_t>(n_)));
  return SortedIterator(std::make_unique<MappedStream<RankSpaceMap>>(
      std::move(rank_stream), &map_));
}

size_t ThreeSidedIndex::memory_bytes() const {
  size_t bytes = nodes_.capacity() * sizeof(OneSidedIndex);
  for (const auto& d : nodes_) bytes += d.memory_bytes();
  bytes += (map_.x_sorted().size() + map_.y_sorted().size()) * sizeof(int64_t);
  if (flipped_) bytes += flipped_->memory_bytes();
  return bytes;
}

}  // namespace srr
