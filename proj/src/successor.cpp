#include "srr/successor.hpp"

#include <algorithm>
#include <stdexcept>

#include "srr/util.hpp"

namespace srr {

uint32_t SuccessorIndex::default_stride(size_t n) {
  return std::max<uint32_t>(1, ceil_log2(std::max<uint32_t>(2, ceil_log2(n))));
}

SuccessorIndex SuccessorIndex::build(std::span<const Point> original_points,
                                     uint32_t stride) {
  auto [pts, map] = rank_space_reduce(original_points);
  return from_rank(pts, std::move(map), stride);
}

SuccessorIndex SuccessorIndex::build_rank_space(
    std::span<const Point> rank_points, uint32_t stride) {
  return from_rank(rank_points, RankSpaceMap::identity(rank_points.size()),
                   stride);
}

SuccessorIndex SuccessorIndex::from_rank(std::span<const Point> rank_points,
                                         RankSpaceMap map, uint32_t stride) {
  if (stride == 0) stride = default_stride(rank_points.size());
  SuccessorIndex idx;
  CompactRangeTree::LevelSequences levels;
  idx.tree_ = CompactRangeTree::build(rank_points, stride, &levels);
  idx.map_ = std::move(map);
  idx.level_rmq_.reserve(levels.size());
  const auto& by_id = idx.tree_.points_by_id();
  for (const auto& ids : levels) {
    std::vector<uint32_t> xs(ids.size());
    for (size_t i = 0; i < ids.size(); ++i)
      xs[i] = static_cast<uint32_t>(by_id[ids[i]].x);
    idx.level_rmq_.emplace_back(std::move(xs));
  }
  return idx;
}

// Both directional searches share one shape. Forward looks for the leftmost
// point with x >= bound; backward for the rightmost with x <= bound. The
// walk binary-searches the levels of the path to the bound's leaf for the
// lowest node whose y-range still contains a point on the query side of the
// bound, then reads the answer from that node's off-path child.
std::optional<Point> SuccessorIndex::directional_search(
    int64_t bound, int64_t c, int64_t d, bool forward,
    ProbeCounters* pc) const {
  const int64_t n = size();
  if (forward) {
    if (bound > n) return std::nullopt;
    bound = std::max<int64_t>(bound, 1);
  } else {
    if (bound < 1) return std::nullopt;
    bound = std::min<int64_t>(bound, n);
  }
  c = std::max<int64_t>(c, 1);
  d = std::min<int64_t>(d, n);
  if (c > d) return std::nullopt;

  const uint32_t depth = tree_.depth();
  const uint32_t leaf_off = static_cast<uint32_t>(bound - 1);

  // y-positions of [c, d] in every node along the path, derived root-down.
  std::vector<IndexRange> ranges(depth + 1);
  ranges[0] = {static_cast<uint32_t>(c - 1), static_cast<uint32_t>(d - 1)};
  for (uint32_t l = 0; l < depth; ++l) {
    const bool right = (leaf_off >> (depth - 1 - l)) & 1;
    ranges[l + 1] =
        tree_.child_range({l, leaf_off >> (depth - l)}, right, ranges[l]);
  }

  const auto mode = forward ? RangeMinMax<uint32_t>::Mode::kMax
                            : RangeMinMax<uint32_t>::Mode::kMin;
  // Does S(path[level]) still hold a point inside the band on the query
  // side of the bound?
  auto satisfied = [&](uint32_t level) {
    if (pc) ++pc->nodes_visited;
    const IndexRange& r = ranges[level];
    if (r.empty()) return false;
    const uint32_t seg =
        tree_.node_begin({level, leaf_off >> (depth - level)});
    if (pc) ++pc->rmq_probes;
    const auto& rmq = level_rmq_[level];
    const uint32_t ext = static_cast<uint32_t>(
        rmq.value_at(rmq.query(seg + r.lo, seg + r.hi, mode)));
    return forward ? ext >= bound : ext <= bound;
  };

  uint32_t lo = 0, hi = depth;
  while (hi - lo > 1) {
    const uint32_t mid = (lo + hi) / 2;
    if (satisfied(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Lower candidate first, then the upper one.
  uint32_t found;
  if (hi != lo && satisfied(hi)) {
    found = hi;
  } else if (satisfied(lo)) {
    found = lo;
  } else {
    return std::nullopt;
  }

  if (found == depth) {
    // The bound's own leaf: its single point lies in the band.
    return tree_.point_at({depth, leaf_off}, ranges[depth].lo - 0, pc);
  }

  const NodeRef node{found, leaf_off >> (depth - found)};
  const bool path_goes_right = (leaf_off >> (depth - 1 - found)) & 1;
  // The path child of the lowest satisfied node must point away from the
  // answer side; otherwise the search above returned a wrong level.
  if (path_goes_right == forward)
    throw std::logic_error(
        "range successor: path child of lowest nonempty node on the answer side");
  const NodeRef sib{found + 1, 2 * node.offset + (forward ? 1u : 0u)};
  const IndexRange r = tree_.child_range(node, forward, ranges[found]);
  if (r.empty())
    throw std::logic_error("range successor: off-path child band empty");
  const uint32_t seg = tree_.node_begin(sib);
  if (pc) {
    ++pc->nodes_visited;
    ++pc->rmq_probes;
  }
  const auto& rmq = level_rmq_[found + 1];
  const auto ans_mode = forward ? RangeMinMax<uint32_t>::Mode::kMin
                                : RangeMinMax<uint32_t>::Mode::kMax;
  const size_t at = rmq.query(seg + r.lo, seg + r.hi, ans_mode);
  return tree_.point_at(sib, static_cast<uint32_t>(at - seg), pc);
}

std::optional<Point> SuccessorIndex::successor_rank(int64_t a, int64_t c,
                                                    int64_t d,
                                                    ProbeCounters* pc) const {
  return directional_search(a, c, d, true, pc);
}

std::optional<Point> SuccessorIndex::predecessor_rank(int64_t b, int64_t c,
                                                      int64_t d,
                                                      ProbeCounters* pc) const {
  return directional_search(b, c, d, false, pc);
}

namespace {

class SuccessorWalkStream final : public PointStream {
 public:
  SuccessorWalkStream(const SuccessorIndex* idx, const QueryRect& rank_q)
      : idx_(idx) {
    next_a_ = rank_q.x_lo.value_or(1);
    b_ = rank_q.x_hi.value_or(idx->size());
    c_ = rank_q.y_lo.value_or(1);
    d_ = rank_q.y_hi.value_or(idx->size());
  }

  std::optional<Point> next() override {
    if (done_) return std::nullopt;
    auto p = idx_->successor_rank(next_a_, c_, d_, &stats_.probes);
    if (!p || p->x > b_) {
      done_ = true;
      return std::nullopt;
    }
    next_a_ = p->x + 1;
    return p;
  }

  const QueryStats& stats() const override { return stats_; }

 private:
  const SuccessorIndex* idx_;
  int64_t next_a_, b_, c_, d_;
  bool done_ = false;
  QueryStats stats_;
};

}  // namespace

SortedIterator SuccessorIndex::sorted_rank(const QueryRect& rank_q) const {
  return SortedIterator(std::make_unique<SuccessorWalkStream>(this, rank_q));
}

std::optional<Point> SuccessorIndex::successor(int64_t a, int64_t c, int64_t d,
                                               ProbeCounters* pc) const {
  const QueryRect rq = map_.reduce({a, {}, c, d});
  auto p = successor_rank(rq.x_lo.value_or(1), rq.y_lo.value_or(1),
                          rq.y_hi.value_or(size()), pc);
  if (!p) return std::nullopt;
  return map_.to_original(*p);
}

SortedIterator SuccessorIndex::sorted(const QueryRect& q) const {
  auto inner =
      std::make_unique<SuccessorWalkStream>(this, map_.reduce(q));
  return SortedIterator(
      std::make_unique<MappedStream<RankSpaceMap>>(std::move(inner), &map_));
}

size_t SuccessorIndex::memory_bytes() const {
  size_t b = tree_.memory_bytes();
  for (const auto& r : level_rmq_) b += r.memory_bytes();
  return b;
}

}  // namespace srr
