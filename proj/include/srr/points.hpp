#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace srr {

// A planar grid point. `id` is the point's position in the input sequence and
// is what makes duplicate coordinates distinguishable after reduction.
struct Point {
  int64_t x = 0;
  int64_t y = 0;
  uint32_t id = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

std::string to_string(const Point& p);

// Axis-aligned query rectangle. An unset side is unbounded; emptiness is a
// legal state (x_lo > x_hi after reduction, say) and simply matches nothing.
struct QueryRect {
  std::optional<int64_t> x_lo;
  std::optional<int64_t> x_hi;
  std::optional<int64_t> y_lo;
  std::optional<int64_t> y_hi;

  static QueryRect all() { return {}; }
  static QueryRect box(int64_t xl, int64_t xh, int64_t yl, int64_t yh) {
    return {xl, xh, yl, yh};
  }

  bool contains(const Point& p) const {
    if (x_lo && p.x < *x_lo) return false;
    if (x_hi && p.x > *x_hi) return false;
    if (y_lo && p.y < *y_lo) return false;
    if (y_hi && p.y > *y_hi) return false;
    return true;
  }
  bool bounded() const { return x_lo && x_hi && y_lo && y_hi; }
};

// Coordinate translation between the original grid and rank space.
// Rank r on an axis corresponds to the r-th smallest original value on that
// axis, ties broken by point id, so ranks form a permutation of [1, n].
class RankSpaceMap {
 public:
  RankSpaceMap() = default;

  size_t size() const { return x_sorted_.size(); }
  int64_t original_x(int64_t x_rank) const { return x_sorted_[x_rank - 1]; }
  int64_t original_y(int64_t y_rank) const { return y_sorted_[y_rank - 1]; }

  // Maps a rank-space point back onto the original grid.
  Point to_original(const Point& rank_point) const {
    return {original_x(rank_point.x), original_y(rank_point.y), rank_point.id};
  }

  // Membership-preserving query translation: a point lies in q exactly when
  // its rank-space image lies in the reduced rectangle. Bounds falling
  // between adjacent coordinate values produce an empty rank range.
  QueryRect reduce(const QueryRect& q) const;

  static RankSpaceMap identity(size_t n);

  std::span<const int64_t> x_sorted() const { return x_sorted_; }
  std::span<const int64_t> y_sorted() const { return y_sorted_; }

 private:
  friend std::pair<std::vector<Point>, RankSpaceMap> rank_space_reduce(
      std::span<const Point>);
  std::vector<int64_t> x_sorted_;
  std::vector<int64_t> y_sorted_;
};

// Replaces coordinates by their ranks (ties broken by id), so every
// coordinate of the result is distinct and lies in [1, n]. Throws
// std::invalid_argument on an empty input.
std::pair<std::vector<Point>, RankSpaceMap> rank_space_reduce(
    std::span<const Point> pts);

inline QueryRect reduce_query(const QueryRect& q, const RankSpaceMap& m) {
  return m.reduce(q);
}

// Brute-force reference answers. These ship with the library so the CLI can
// re-check structure output on user data; every index is tested against them.

// Points of pts inside q in ascending x (ties by id), truncated to k if set.
std::vector<Point> oracle_report_sorted(std::span<const Point> pts,
                                        const QueryRect& q,
                                        std::optional<size_t> k = {});

// Min-x point inside q, which must be unbounded on the high-x side.
std::optional<Point> oracle_successor(std::span<const Point> pts,
                                      const QueryRect& q);

// Points of pts inside q dominated by no other point inside q
// (p dominates r when p.x >= r.x and p.y >= r.y), in descending x.
std::vector<Point> oracle_maximal(std::span<const Point> pts,
                                  const QueryRect& q);

}  // namespace srr
