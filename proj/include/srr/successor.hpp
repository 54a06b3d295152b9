#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "srr/range_tree.hpp"
#include "srr/rmq.hpp"
#include "srr/stream.hpp"

namespace srr {

// Range-successor queries over a static point set: the leftmost point at or
// right of a vertical line within a horizontal band, plus x-sorted reporting
// built from repeated successor steps.
//
// The tree search binary-searches the levels of the root-to-leaf path of the
// query's x bound, testing candidate nodes with per-level range-max (or
// range-min, for the mirrored predecessor walk) probes over the x values of
// each node's y-sorted sequence. Nodes examined per query stay within
// 2 * ceil(log2(depth)) + 4, counted in ProbeCounters::nodes_visited.
class SuccessorIndex {
 public:
  SuccessorIndex() = default;

  // Reduces to rank space internally. stride < 1 throws.
  static SuccessorIndex build(std::span<const Point> original_points,
                              uint32_t stride = 0);
  // For inputs already in rank space (identity map), e.g. permutations.
  static SuccessorIndex build_rank_space(std::span<const Point> rank_points,
                                         uint32_t stride = 0);

  // Rank-space queries. Bounds may lie outside [1, n]; they are clamped.
  // Leftmost point with x >= a and y in [c, d].
  std::optional<Point> successor_rank(int64_t a, int64_t c, int64_t d,
                                      ProbeCounters* pc = nullptr) const;
  // Rightmost point with x <= b and y in [c, d].
  std::optional<Point> predecessor_rank(int64_t b, int64_t c, int64_t d,
                                        ProbeCounters* pc = nullptr) const;
  // Ascending-x stream of the points inside the rank-space rectangle.
  SortedIterator sorted_rank(const QueryRect& rank_q) const;

  // Original-coordinate forms of the same queries.
  std::optional<Point> successor(int64_t a, int64_t c, int64_t d,
                                 ProbeCounters* pc = nullptr) const;
  SortedIterator sorted(const QueryRect& q) const;

  const RankSpaceMap& map() const { return map_; }
  const CompactRangeTree& tree() const { return tree_; }
  uint32_t size() const { return tree_.size(); }
  size_t memory_bytes() const;

  // Default stride used when none is given.
  static uint32_t default_stride(size_t n);

 private:
  static SuccessorIndex from_rank(std::span<const Point> rank_points,
                                  RankSpaceMap map, uint32_t stride);
  std::optional<Point> directional_search(int64_t bound, int64_t c, int64_t d,
                                          bool forward,
                                          ProbeCounters* pc) const;

  CompactRangeTree tree_;
  RankSpaceMap map_;
  // One structure per level over that level's x values in node-major
  // y-order; node queries never cross segment boundaries.
  std::vector<RangeMinMax<uint32_t>> level_rmq_;
};

}  // namespace srr
