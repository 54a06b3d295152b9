#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srr/points.hpp"
#include "srr/stream.hpp"
#include "srr/successor.hpp"

namespace srr {

// Staircase walks over a range-successor index. Both operations assume the
// indexed set has pairwise-distinct x and pairwise-distinct y (a rank grid);
// rank reduction of such a set preserves dominance exactly.

// Maximal points of q's contents (no other point in q has both coordinates
// >=), streamed online in descending x and ascending y. Each step takes the
// max-x point of the current rectangle, then shrinks it strictly past that
// point in both axes.
SortedIterator maximal_points(const SuccessorIndex& idx, const QueryRect& q);

// Points p with p.x <= qx, p.y <= qy whose closed axis-aligned rectangle
// spanned by p and (qx, qy) holds no other set point. Equals the maximal
// points of the quadrant, and is streamed the same way.
SortedIterator rectangularly_visible(const SuccessorIndex& idx, int64_t qx,
                                     int64_t qy);

// Quadratic reference for rectangular visibility: per candidate, scan every
// other point for membership in the spanned rectangle.
std::vector<Point> oracle_visible(std::span<const Point> pts, int64_t qx,
                                  int64_t qy);

}  // namespace srr
