#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace srr {

// Plain bit array with O(1) rank support (block and superblock counts).
// Build by setting bits, then call finish() before querying rank.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }
  void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void finish() {
    super_.assign(words_.size() / kWordsPerSuper + 1, 0);
    block_.assign(words_.size(), 0);
    uint64_t total = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
      if (w % kWordsPerSuper == 0) super_[w / kWordsPerSuper] = total;
      block_[w] = static_cast<uint16_t>(total - super_[w / kWordsPerSuper]);
      total += std::popcount(words_[w]);
    }
    ones_ = total;
  }

  // Number of set bits in [0, i).
  uint64_t rank1(size_t i) const {
    if (i >= n_) return ones_;
    const size_t w = i >> 6;
    uint64_t r = super_[w / kWordsPerSuper] + block_[w];
    const size_t rem = i & 63;
    if (rem) r += std::popcount(words_[w] & ((uint64_t{1} << rem) - 1));
    return r;
  }
  uint64_t rank0(size_t i) const { return i - rank1(i); }
  uint64_t ones() const { return ones_; }

  const std::vector<uint64_t>& words() const { return words_; }
  void assign_words(size_t n, std::vector<uint64_t> w) {
    n_ = n;
    words_ = std::move(w);
    finish();
  }

 private:
  static constexpr size_t kWordsPerSuper = 8;
  size_t n_ = 0;
  uint64_t ones_ = 0;
  std::vector<uint64_t> words_;
  std::vector<uint64_t> super_;
  std::vector<uint16_t> block_;
};

}  // namespace srr
