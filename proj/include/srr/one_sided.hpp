#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srr/predecessor.hpp"
#include "srr/points.hpp"
#include "srr/probe.hpp"
#include "srr/stream.hpp"

namespace srr {

// Reports the points below a horizontal line in ascending x, online. Built
// over any point set with pairwise-distinct y coordinates.
//
// Three query paths cooperate:
//   * the lowest sm_len points (a prefix of the y-sorted array) resolve the
//     line position by scanning when few members lie below it,
//   * per-point lists of the v_len smallest-x members at or below each
//     point's level serve short output prefixes after one locator probe,
//   * a multi-way merge over a y-keyed segment tree of x-sorted lists takes
//     over when a consumer outruns the per-point list.
// The per-point list and the merge agree on emission order, which the merge
// exploits by discarding exactly the already-served prefix on takeover.
class OneSidedIndex {
 public:
  enum class Locator {
    kDirectory,     // bucketed predecessor directory over the y universe
    kBinarySearch,  // binary search over the y-sorted member array
  };
  struct Config {
    uint32_t v_len = 0;   // 0: ceil(log2 m)
    uint32_t sm_len = 0;  // 0: ceil(log2 ceil(log2 m))
    Locator locator = Locator::kDirectory;
    int64_t y_universe = 0;  // directory only; 0: max member y
  };

  OneSidedIndex() = default;
  explicit OneSidedIndex(std::vector<Point> pts)
      : OneSidedIndex(std::move(pts), Config{}) {}
  OneSidedIndex(std::vector<Point> pts, Config cfg);

  // All points with y <= c, ascending x.
  SortedIterator iter(int64_t c) const;
  // Merge path only, bypassing the per-point lists (verification hook).
  SortedIterator merge_iter(int64_t c) const;

  // Highest member with y <= c.
  std::optional<Point> highest_at_or_below(int64_t c,
                                           ProbeCounters* pc = nullptr) const;

  size_t size() const { return by_y_.size(); }
  uint32_t v_len() const { return v_len_; }
  uint32_t sm_len() const { return sm_len_; }
  std::span<const Point> points_by_y() const { return by_y_; }
  // Per-point list of the member at y-index r (ascending x).
  std::vector<Point> v_list(uint32_t r) const;
  size_t memory_bytes() const;

 private:
  friend class OneSidedStream;

  // Index into by_y_ of the highest member with y <= c, or none. Consults the
  // low prefix first; a locator probe is counted only when the prefix scan
  // cannot decide.
  std::optional<uint32_t> locate(int64_t c, ProbeCounters* pc) const;
  SortedIterator stream_from(std::optional<uint32_t> idx, bool with_v_list,
                             QueryStats boot) const;

  std::vector<Point> by_y_;
  std::vector<int64_t> ys_;
  uint32_t v_len_ = 1;
  uint32_t sm_len_ = 1;
  uint32_t sm_count_ = 0;

  // Heap-ordered segment tree over y-index ranges; node k holds the x-sorted
  // indices (into by_y_) of the members in its range. Leaves start at pad_.
  uint32_t pad_ = 1;
  std::vector<std::vector<uint32_t>> lists_;

  std::vector<uint32_t> v_entries_;  // m rows of v_len_, row r for by_y_[r]
  std::vector<uint32_t> v_count_;

  Locator locator_ = Locator::kDirectory;
  PredecessorSet dir_;
  std::vector<uint32_t> y_to_idx_;
};

}  // namespace srr
