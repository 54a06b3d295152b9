#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srr/rmq.hpp"
#include "srr/stream.hpp"
#include "srr/successor.hpp"

namespace srr {

// Substring search over a fixed text, built on the position set: one point
// (start position, suffix rank) per suffix. A pattern turns into the rank
// interval of suffixes it prefixes, so occurrence queries become rectangle
// queries against the range-successor index, which yields positions in text
// order without sorting.
//
// Positions and ranks are 1-based throughout. Occurrence streams emit points
// whose x is the start position and y the suffix rank.
class TextIndex {
 public:
  TextIndex() = default;
  // Throws std::invalid_argument on an empty text.
  static TextIndex build(std::string text);

  size_t size() const { return text_.size(); }
  const std::string& text() const { return text_; }
  std::span<const uint32_t> suffix_array() const { return sa_; }
  uint32_t rank_of(uint32_t pos) const { return rank_[pos - 1]; }
  const SuccessorIndex& positions() const { return pos_index_; }

  // Interval of suffix ranks whose suffixes start with p; the whole [1, n]
  // for an empty pattern, std::nullopt when p does not occur.
  std::optional<std::pair<uint32_t, uint32_t>> pattern_range(
      std::string_view p) const;

  // Leftmost occurrence starting at or after `from`. The repeated form
  // enumerates occurrences one call at a time.
  std::optional<uint32_t> first_occurrence(std::string_view p,
                                           uint32_t from = 1) const;

  // All occurrences in text order, online, via iterated range successor.
  SortedIterator occurrences(std::string_view p) const;
  // Same sequence via interval splitting: a heap of suffix-rank intervals
  // keyed by the minimum position inside each, split at the emitted minimum.
  SortedIterator occurrences_by_splitting(std::string_view p) const;

  // Occurrences starting inside [lo, hi], in text order.
  SortedIterator position_restricted(std::string_view p, uint32_t lo,
                                     uint32_t hi) const;

  // Greedy leftmost non-overlapping occurrences (maximum cardinality).
  std::vector<uint32_t> non_overlapping(std::string_view p) const;

  // Leftmost embedding of the parts in order: positions j_1 < j_2 < ... with
  // j_t >= j_{t-1} + |parts[t-1]| and each j_t minimal, one first_occurrence
  // step per part. Greedy choices never block a later part, so nullopt means
  // no embedding exists at all. Parts must be nonempty.
  std::optional<std::vector<uint32_t>> leftmost_chain(
      std::span<const std::string> parts) const;

  size_t memory_bytes() const;

 private:
  friend class SplitStream;

  // <0, 0, >0: suffix at pos is below / prefixed-by / above p.
  int suffix_compare(uint32_t pos, std::string_view p) const;
  std::optional<uint32_t> first_in_range(uint32_t lo_rank, uint32_t hi_rank,
                                         int64_t from) const;

  std::string text_;
  std::vector<uint32_t> sa_;    // rank -> position
  std::vector<uint32_t> rank_;  // position - 1 -> rank
  SuccessorIndex pos_index_;
  std::unique_ptr<RangeMinMax<uint32_t>> sa_rmq_;
};

// Brute-force references (direct text scans), shipped so the CLI can
// re-check index output on user data. Positions are 1-based, ascending.
std::vector<uint32_t> naive_occurrences(std::string_view text,
                                        std::string_view p);
std::vector<uint32_t> naive_non_overlapping(std::string_view text,
                                            std::string_view p);
std::optional<std::vector<uint32_t>> naive_leftmost_chain(
    std::string_view text, std::span<const std::string> parts);

}  // namespace srr
