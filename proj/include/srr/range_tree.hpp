#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "srr/bitvector.hpp"
#include "srr/points.hpp"
#include "srr/probe.hpp"

namespace srr {

// Node address in a complete binary tree laid out by level. The root is
// {0, 0}; a node at {l, o} has children {l+1, 2o} and {l+1, 2o+1}. Addresses
// are pure arithmetic; validity against a concrete tree is checked by the
// tree's navigation calls.
struct NodeRef {
  uint32_t level = 0;
  uint32_t offset = 0;
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

// Inclusive index range within one node's sequence; lo > hi encodes empty.
struct IndexRange {
  uint32_t lo = 1;
  uint32_t hi = 0;
  bool empty() const { return lo > hi; }
  uint32_t count() const { return empty() ? 0 : hi - lo + 1; }
  static IndexRange none() { return {1, 0}; }
};

enum class NavMove { kParent, kLeft, kRight, kSibling, kAncestorAtLevel };

// Balanced binary tree over rank-space points keyed by x: leaves hold points
// in ascending x, and each node's subtree sequence S(v) is sorted by y. Only
// per-level child-direction bitvectors are kept, plus the full sequences of
// every stride-th level, so a single point decodes with at most `stride`
// level hops and one stored-level read. The leaf count is padded to a power
// of two; padding positions carry no points and never appear in any count.
class CompactRangeTree {
 public:
  CompactRangeTree() = default;

  // Per-level point-id sequences in node-major y-order, produced during
  // construction. Callers that need the uncompressed view (per-node extras)
  // can ask build() to hand them over instead of discarding them.
  using LevelSequences = std::vector<std::vector<uint32_t>>;

  // `rank_points` must have rank-space coordinates (each axis a permutation
  // of [1, n]). Throws std::invalid_argument when stride < 1 or the input is
  // empty.
  static CompactRangeTree build(std::span<const Point> rank_points,
                                uint32_t stride,
                                LevelSequences* keep_levels = nullptr);

  uint32_t size() const { return n_; }
  uint32_t depth() const { return depth_; }  // leaf level; root is level 0
  uint32_t stride() const { return stride_; }
  NodeRef root() const { return {0, 0}; }
  bool is_leaf(NodeRef v) const { return v.level == depth_; }
  bool stored_level(uint32_t level) const {
    return level % stride_ == 0 || level == depth_;
  }

  // Navigation with validity checks; illegal moves throw std::out_of_range.
  NodeRef navigate(NodeRef v, NavMove m, uint32_t ancestor_level = 0) const;

  uint32_t node_count(NodeRef v) const;  // |S(v)|
  uint32_t node_begin(NodeRef v) const;  // offset of S(v) in its level
  // Covered x-ranks [lo, hi]; hi < lo for padding-only nodes.
  std::pair<int64_t, int64_t> x_span(NodeRef v) const;
  NodeRef leaf_for_x_rank(int64_t x) const;

  // S(v)[i] with rank-space coordinates. Throws std::out_of_range when
  // i >= |S(v)|. Decode cost: at most stride() level hops (decode_hops) and
  // one stored-level read (stored_reads).
  Point point_at(NodeRef v, uint32_t i, ProbeCounters* pc = nullptr) const;

  // Positions of points with y in [c, d] within S(v); bounds clamped to
  // [1, n]. Computed by translating the root range down v's path.
  IndexRange node_range(int64_t c, int64_t d, NodeRef v) const;

  // One descent step: positions of S(v)'s range within the chosen child.
  IndexRange child_range(NodeRef v, bool right_child, IndexRange r) const;

  const std::vector<Point>& points_by_id() const { return pts_by_id_; }
  const BitVector& level_bits(uint32_t level) const { return bits_[level]; }

  size_t memory_bytes() const;

  // Versioned little-endian binary format; see docs/FORMATS.md.
  void save(std::ostream& os) const;
  static CompactRangeTree load(std::istream& is);

 private:
  uint32_t seg_start(uint32_t level, uint32_t offset) const {
    return seg_start_[level][offset];
  }
  void derive_segments();

  uint32_t n_ = 0;
  uint32_t depth_ = 0;
  uint32_t stride_ = 1;
  std::vector<Point> pts_by_id_;
  std::vector<BitVector> bits_;                   // levels 0 .. depth-1
  std::vector<std::vector<uint32_t>> seg_start_;  // per level, 2^l + 1 entries
  std::vector<std::vector<uint32_t>> stored_;     // per stored level: ids
};

}  // namespace srr
