#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "srr/one_sided.hpp"
#include "srr/points.hpp"
#include "srr/stream.hpp"

namespace srr {

// Online sorted reporting for rectangles open on one y side:
// [a,b] x (-inf,c] or [a,b] x [c,+inf), streamed in ascending x.
//
// A balanced tree over x-ranks carries one below-line index per node. The
// query x-range splits into maximal subtrees whose x-spans are consecutive,
// so their streams concatenate instead of merging; streams open lazily, one
// at a time, which keeps at most one visited node's stream unexhausted no
// matter where the consumer stops. Queries bounded from below in y run on an
// internal y-flipped copy.
class ThreeSidedIndex {
 public:
  struct Config {
    uint32_t v_len = 0;   // forwarded to every per-node below-line index
    uint32_t sm_len = 0;  // likewise
    bool build_flipped = true;  // also support queries bounded from below
  };

  ThreeSidedIndex() = default;
  static ThreeSidedIndex build(std::span<const Point> original) {
    return build(original, Config{});
  }
  static ThreeSidedIndex build(std::span<const Point> original, Config cfg);

  // q may bound y on at most one side (none means the whole slab). Points
  // stream in original coordinates, ascending x.
  SortedIterator iter(const QueryRect& q) const;

  size_t size() const { return n_; }
  uint32_t depth() const { return depth_; }
  bool has_flipped() const { return flipped_ != nullptr; }
  const RankSpaceMap& map() const { return map_; }
  size_t memory_bytes() const;

 private:
  friend class ThreeSidedStream;

  // Rank-space stream over x in [a,b], y <= c.
  std::unique_ptr<PointStream> below_rank_stream(int64_t a, int64_t b,
                                                 int64_t c) const;
  // Maximal subtrees covering leaf ranks [a,b], in ascending x-span order,
  // memberless padding nodes dropped.
  std::vector<uint32_t> canonical_cover(uint32_t a, uint32_t b) const;

  size_t n_ = 0;
  uint32_t depth_ = 0;
  uint32_t pad_ = 1;
  RankSpaceMap map_;
  std::vector<OneSidedIndex> nodes_;  // heap order, index 0 unused
  int64_t flip_base_ = 0;             // original min y + max y
  std::unique_ptr<ThreeSidedIndex> flipped_;
};

}  // namespace srr
