#include "srr/predecessor.hpp"

#include <bit>
#include <stdexcept>

namespace srr {

PredecessorSet::PredecessorSet(size_t universe, std::span<const int64_t> keys)
    : universe_(universe) {
  const size_t buckets = universe / 64 + 1;
  masks_.assign(buckets, 0);
  for (int64_t k : keys) {
    if (k < 1 || k > static_cast<int64_t>(universe))
      throw std::invalid_argument("PredecessorSet: key outside universe");
    const uint64_t slot = static_cast<uint64_t>(k - 1);
    masks_[slot >> 6] |= uint64_t{1} << (slot & 63);
  }
  for (uint64_t w : masks_) count_ += std::popcount(w);

  prev_.assign(buckets, kNone);
  next_.assign(buckets, kNone);
  uint32_t last = kNone;
  for (size_t b = 0; b < buckets; ++b) {
    prev_[b] = last;
    if (masks_[b]) last = static_cast<uint32_t>(b);
  }
  last = kNone;
  for (size_t b = buckets; b-- > 0;) {
    next_[b] = last;
    if (masks_[b]) last = static_cast<uint32_t>(b);
  }
}

std::optional<int64_t> PredecessorSet::pred(int64_t q) const {
  if (count_ == 0 || q < 1) return std::nullopt;
  if (q > static_cast<int64_t>(universe_)) q = static_cast<int64_t>(universe_);
  const uint64_t slot = static_cast<uint64_t>(q - 1);
  size_t b = slot >> 6;
  const unsigned off = slot & 63;
  uint64_t m = masks_[b] & (off == 63 ? ~uint64_t{0}
                                      : ((uint64_t{1} << (off + 1)) - 1));
  if (!m) {
    if (prev_[b] == kNone) return std::nullopt;
    b = prev_[b];
    m = masks_[b];
  }
  const unsigned top = 63 - std::countl_zero(m);
  return static_cast<int64_t>(b * 64 + top) + 1;
}

std::optional<int64_t> PredecessorSet::succ(int64_t q) const {
  if (count_ == 0 || q > static_cast<int64_t>(universe_)) return std::nullopt;
  if (q < 1) q = 1;
  const uint64_t slot = static_cast<uint64_t>(q - 1);
  size_t b = slot >> 6;
  const unsigned off = slot & 63;
  uint64_t m = masks_[b] & ~((uint64_t{1} << off) - 1);
  if (!m) {
    if (next_[b] == kNone) return std::nullopt;
    b = next_[b];
    m = masks_[b];
  }
  const unsigned low = std::countr_zero(m);
  return static_cast<int64_t>(b * 64 + low) + 1;
}

}  // namespace srr
