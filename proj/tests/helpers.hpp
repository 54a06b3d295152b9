#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "srr/points.hpp"
#include "srr/stream.hpp"

namespace srr::test {

// Coordinates drawn uniformly from [1, coord_max]; duplicates likely.
inline std::vector<Point> random_points(size_t n, int64_t coord_max,
                                        std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> d(1, coord_max);
  std::vector<Point> pts(n);
  for (size_t i = 0; i < n; ++i)
    pts[i] = Point{d(rng), d(rng), static_cast<uint32_t>(i)};
  return pts;
}

// Both axes are permutations of [1, n]: a rank grid.
inline std::vector<Point> random_grid(size_t n, std::mt19937_64& rng) {
  std::vector<int64_t> xs(n), ys(n);
  std::iota(xs.begin(), xs.end(), 1);
  std::iota(ys.begin(), ys.end(), 1);
  std::shuffle(xs.begin(), xs.end(), rng);
  std::shuffle(ys.begin(), ys.end(), rng);
  std::vector<Point> pts(n);
  for (size_t i = 0; i < n; ++i)
    pts[i] = Point{xs[i], ys[i], static_cast<uint32_t>(i)};
  return pts;
}

inline std::vector<Point> drain(SortedIterator it) {
  std::vector<Point> out;
  while (auto p = it.next()) out.push_back(*p);
  return out;
}

inline std::pair<int64_t, int64_t> ordered_pair(int64_t lo, int64_t hi,
                                                std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> d(lo, hi);
  int64_t a = d(rng), b = d(rng);
  if (a > b) std::swap(a, b);
  return {a, b};
}

// A bounded rectangle with corners in [lo, hi] on both axes.
inline QueryRect random_rect(int64_t lo, int64_t hi, std::mt19937_64& rng) {
  const auto [xl, xh] = ordered_pair(lo, hi, rng);
  const auto [yl, yh] = ordered_pair(lo, hi, rng);
  return QueryRect{xl, xh, yl, yh};
}

}  // namespace srr::test
