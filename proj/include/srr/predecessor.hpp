#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace srr {

// Static predecessor/successor queries over a set of integer keys drawn from
// the universe [1, universe]. Two-level bucketed directory: one bit per
// universe slot grouped into 64-bit buckets, plus nearest-nonempty-bucket
// links, giving constant-time lookups. Absent answers are values, not errors.
class PredecessorSet {
 public:
  PredecessorSet() = default;
  PredecessorSet(size_t universe, std::span<const int64_t> keys);

  // Largest key <= q (std::nullopt when every key exceeds q).
  std::optional<int64_t> pred(int64_t q) const;
  // Smallest key >= q.
  std::optional<int64_t> succ(int64_t q) const;

  size_t size() const { return count_; }
  size_t universe() const { return universe_; }
  size_t memory_bytes() const {
    return masks_.size() * 8 + (prev_.size() + next_.size()) * 4;
  }

 private:
  size_t universe_ = 0;
  size_t count_ = 0;
  std::vector<uint64_t> masks_;
  std::vector<uint32_t> prev_;  // nearest nonempty bucket strictly before b
  std::vector<uint32_t> next_;  // nearest nonempty bucket strictly after b
  static constexpr uint32_t kNone = 0xffffffffu;
};

}  // namespace srr
