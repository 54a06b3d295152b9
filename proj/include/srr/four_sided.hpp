#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "srr/points.hpp"
#include "srr/stream.hpp"
#include "srr/three_sided.hpp"

namespace srr {

// Online sorted reporting for fully bounded rectangles [a,b] x [c,d],
// streamed in ascending x.
//
// A balanced tree over y-ranks reduces every query to the two children of
// the lowest node whose y-span covers [c,d]: inside the left child the query
// bounds y only from below, inside the right child only from above, and the
// two ascending-x streams merge. Each non-root node answers its one-sided
// flavor through x-consecutive groups: boundary groups query their own
// three-sided index, middle groups are driven by a sample index that holds
// the few lowest points of every group and escalates to the group's full
// index only after every sample of that group has qualified.
class FourSidedIndex {
 public:
  struct Config {
    uint32_t group_len = 0;   // 0: ceil(log2 n)^3
    uint32_t sample_len = 0;  // 0: ceil(log2 ceil(log2 n))
  };

  FourSidedIndex() = default;
  static FourSidedIndex build(std::span<const Point> original) {
    return build(original, Config{});
  }
  static FourSidedIndex build(std::span<const Point> original, Config cfg);

  // Any side may be unbounded. Points stream in original coordinates,
  // ascending x; QueryStats on the iterator carries escalation counters.
  SortedIterator iter(const QueryRect& q) const;

  size_t size() const { return n_; }
  uint32_t depth() const { return depth_; }
  uint32_t group_len() const { return group_len_; }
  uint32_t sample_len() const { return sample_len_; }
  const RankSpaceMap& map() const { return map_; }
  size_t memory_bytes() const;

 private:
  friend class GroupedStream;

  // One tree node's point set, grouped by x. `flip` mirrors y internally so
  // both query flavors (y >= c in left children, y <= d in right children)
  // become below-line queries against the group indexes.
  struct GroupedNode {
    bool flip = false;
    int64_t flip_base = 0;
    uint32_t group_len = 1;
    uint32_t sample_len = 1;
    std::vector<Point> pts;  // rank-space members, ascending x
    std::vector<int64_t> xs;
    std::vector<ThreeSidedIndex> groups;
    std::unique_ptr<ThreeSidedIndex> samples;  // built once 3+ groups exist

    // Members with x in [a,b] on the node's bounded y side of c (true rank).
    std::unique_ptr<PointStream> stream(int64_t a, int64_t b, int64_t c) const;
    uint32_t group_size(uint32_t t) const;
    uint32_t sample_count(uint32_t t) const;
    size_t memory_bytes() const;
  };

  static GroupedNode build_node(std::vector<Point> pts, bool flip,
                                int64_t flip_base, uint32_t group_len,
                                uint32_t sample_len);

  size_t n_ = 0;
  uint32_t depth_ = 0;
  uint32_t pad_ = 1;
  uint32_t group_len_ = 1;
  uint32_t sample_len_ = 1;
  RankSpaceMap map_;
  std::vector<Point> by_y_;          // rank-space points, ascending y
  std::vector<GroupedNode> nodes_;   // heap order, entries 0..1 unused
};

}  // namespace srr
