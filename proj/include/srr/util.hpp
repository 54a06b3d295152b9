#pragma once

#include <bit>
#include <cstdint>

namespace srr {

// ceil(log2(x)) for x >= 1; 0 for x <= 1.
inline uint32_t ceil_log2(uint64_t x) {
  if (x <= 1) return 0;
  return static_cast<uint32_t>(std::bit_width(x - 1));
}

// floor(log2(x)) for x >= 1.
inline uint32_t floor_log2(uint64_t x) {
  return static_cast<uint32_t>(std::bit_width(x)) - 1;
}

}  // namespace srr
