#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "srr/util.hpp"

namespace srr {

// Static range-min/range-max index queries over an array of values, both
// directions served by one structure. Ties resolve to the leftmost index.
//
// Layout: the array is cut into blocks of kBlock entries; each block stores
// its extreme indices, and sparse tables over the per-block extremes answer
// queries spanning whole blocks. Partial blocks are scanned directly, so a
// query costs O(kBlock) operations, constant for the fixed block size, and
// the tables take O((n/kBlock) log(n/kBlock)) entries.
//
// table_bits() counts index entries only (32 bits each):
//   nb   = ceil(n / kBlock)
//   rows = nb >= 2 ? floor(log2(nb)) : 0
//   table_bits = 32 * 2 * (nb + sum_{k=1..rows} (nb - 2^k + 1))
template <typename Value>
class RangeMinMax {
 public:
  static constexpr size_t kBlock = 32;
  enum class Mode { kMin, kMax };

  RangeMinMax() = default;

  explicit RangeMinMax(std::vector<Value> values) : values_(std::move(values)) {
    if (values_.empty())
      throw std::invalid_argument("RangeMinMax: empty array");
    const size_t nb = (values_.size() + kBlock - 1) / kBlock;
    block_min_.resize(nb);
    block_max_.resize(nb);
    for (size_t b = 0; b < nb; ++b) {
      const size_t lo = b * kBlock;
      const size_t hi = std::min(values_.size(), lo + kBlock);
      uint32_t mn = static_cast<uint32_t>(lo), mx = static_cast<uint32_t>(lo);
      for (size_t i = lo + 1; i < hi; ++i) {
        if (values_[i] < values_[mn]) mn = static_cast<uint32_t>(i);
        if (values_[i] > values_[mx]) mx = static_cast<uint32_t>(i);
      }
      block_min_[b] = mn;
      block_max_[b] = mx;
    }
    const size_t rows = nb >= 2 ? floor_log2(nb) : 0;
    sparse_min_.resize(rows);
    sparse_max_.resize(rows);
    const std::vector<uint32_t>* prev_min = &block_min_;
    const std::vector<uint32_t>* prev_max = &block_max_;
    for (size_t k = 1; k <= rows; ++k) {
      const size_t len = nb - (size_t{1} << k) + 1;
      const size_t half = size_t{1} << (k - 1);
      auto& row_min = sparse_min_[k - 1];
      auto& row_max = sparse_max_[k - 1];
      row_min.resize(len);
      row_max.resize(len);
      for (size_t i = 0; i < len; ++i) {
        row_min[i] = pick((*prev_min)[i], (*prev_min)[i + half], Mode::kMin);
        row_max[i] = pick((*prev_max)[i], (*prev_max)[i + half], Mode::kMax);
      }
      prev_min = &row_min;
      prev_max = &row_max;
    }
  }

  size_t size() const { return values_.size(); }
  const Value& value_at(size_t i) const { return values_[i]; }

  // Index of the extreme value in the inclusive range [i, j].
  size_t query(size_t i, size_t j, Mode m) const {
    if (i > j || j >= values_.size())
      throw std::out_of_range("RangeMinMax::query: bad range");
    const size_t bi = i / kBlock, bj = j / kBlock;
    if (bi == bj) return scan(i, j, m);
    uint32_t best = static_cast<uint32_t>(scan(i, (bi + 1) * kBlock - 1, m));
    if (bj - bi >= 2) best = pick(best, blocks(bi + 1, bj - 1, m), m);
    return pick(best, static_cast<uint32_t>(scan(bj * kBlock, j, m)), m);
  }
  size_t min_index(size_t i, size_t j) const { return query(i, j, Mode::kMin); }
  size_t max_index(size_t i, size_t j) const { return query(i, j, Mode::kMax); }

  size_t table_bits() const {
    size_t entries = block_min_.size() + block_max_.size();
    for (const auto& row : sparse_min_) entries += row.size();
    for (const auto& row : sparse_max_) entries += row.size();
    return entries * 32;
  }

  size_t memory_bytes() const {
    return values_.size() * sizeof(Value) + table_bits() / 8;
  }

 private:
  // Leftmost-tie winner of two candidate indices.
  uint32_t pick(uint32_t a, uint32_t b, Mode m) const {
    if (values_[a] == values_[b]) return a < b ? a : b;
    const bool a_wins =
        m == Mode::kMin ? values_[a] < values_[b] : values_[a] > values_[b];
    return a_wins ? a : b;
  }

  size_t scan(size_t i, size_t j, Mode m) const {
    size_t best = i;
    for (size_t t = i + 1; t <= j; ++t) best = pick(best, t, m);
    return best;
  }

  // Extreme over whole blocks [bi, bj], inclusive, bi <= bj.
  uint32_t blocks(size_t bi, size_t bj, Mode m) const {
    const auto& base = m == Mode::kMin ? block_min_ : block_max_;
    if (bi == bj) return base[bi];
    const size_t k = floor_log2(bj - bi + 1);
    if (k == 0) return pick(base[bi], base[bj], m);
    const auto& row = (m == Mode::kMin ? sparse_min_ : sparse_max_)[k - 1];
    return pick(row[bi], row[bj - (size_t{1} << k) + 1], m);
  }

  std::vector<Value> values_;
  std::vector<uint32_t> block_min_, block_max_;
  std::vector<std::vector<uint32_t>> sparse_min_, sparse_max_;
};

}  // namespace srr
