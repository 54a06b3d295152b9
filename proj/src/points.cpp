#include "srr/points.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace srr {

std::string to_string(const Point& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) +
         ";id=" + std::to_string(p.id) + ")";
}

QueryRect RankSpaceMap::reduce(const QueryRect& q) const {
  auto lo_rank = [](const std::vector<int64_t>& sorted,
                    const std::optional<int64_t>& b) -> std::optional<int64_t> {
    if (!b) return std::nullopt;
    // First rank whose value is >= *b. Values below *b keep ranks below it.
    auto it = std::lower_bound(sorted.begin(), sorted.end(), *b);
    return static_cast<int64_t>(it - sorted.begin()) + 1;
  };
  auto hi_rank = [](const std::vector<int64_t>& sorted,
                    const std::optional<int64_t>& b) -> std::optional<int64_t> {
    if (!b) return std::nullopt;
    // Last rank whose value is <= *b.
    auto it = std::upper_bound(sorted.begin(), sorted.end(), *b);
    return static_cast<int64_t>(it - sorted.begin());
  };
  return {lo_rank(x_sorted_, q.x_lo), hi_rank(x_sorted_, q.x_hi),
          lo_rank(y_sorted_, q.y_lo), hi_rank(y_sorted_, q.y_hi)};
}

RankSpaceMap RankSpaceMap::identity(size_t n) {
  RankSpaceMap m;
  m.x_sorted_.resize(n);
  m.y_sorted_.resize(n);
  std::iota(m.x_sorted_.begin(), m.x_sorted_.end(), int64_t{1});
  std::iota(m.y_sorted_.begin(), m.y_sorted_.end(), int64_t{1});
  return m;
}

std::pair<std::vector<Point>, RankSpaceMap> rank_space_reduce(
    std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("rank_space_reduce: empty point set");
  const size_t n = pts.size();

  std::vector<uint32_t> order(n);
  std::vector<Point> out(pts.begin(), pts.end());
  RankSpaceMap map;
  map.x_sorted_.resize(n);
  map.y_sorted_.resize(n);

  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return pts[a].id < pts[b].id;
  });
  for (size_t r = 0; r < n; ++r) {
    map.x_sorted_[r] = pts[order[r]].x;
    out[order[r]].x = static_cast<int64_t>(r) + 1;
  }

  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (pts[a].y != pts[b].y) return pts[a].y < pts[b].y;
    return pts[a].id < pts[b].id;
  });
  for (size_t r = 0; r < n; ++r) {
    map.y_sorted_[r] = pts[order[r]].y;
    out[order[r]].y = static_cast<int64_t>(r) + 1;
  }
  return {std::move(out), std::move(map)};
}

std::vector<Point> oracle_report_sorted(std::span<const Point> pts,
                                        const QueryRect& q,
                                        std::optional<size_t> k) {
  std::vector<Point> hits;
  for (const Point& p : pts)
    if (q.contains(p)) hits.push_back(p);
  std::sort(hits.begin(), hits.end(), [](const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.id < b.id;
  });
  if (k && hits.size() > *k) hits.resize(*k);
  return hits;
}

std::optional<Point> oracle_successor(std::span<const Point> pts,
                                      const QueryRect& q) {
  if (q.x_hi)
    throw std::invalid_argument("oracle_successor: x_hi must be unbounded");
  std::optional<Point> best;
  for (const Point& p : pts) {
    if (!q.contains(p)) continue;
    if (!best || p.x < best->x || (p.x == best->x && p.id < best->id)) best = p;
  }
  return best;
}

std::vector<Point> oracle_maximal(std::span<const Point> pts,
                                  const QueryRect& q) {
  std::vector<Point> hits;
  for (const Point& p : pts)
    if (q.contains(p)) hits.push_back(p);
  std::vector<Point> out;
  for (const Point& p : hits) {
    bool dominated = false;
    for (const Point& r : hits) {
      if (r.id == p.id) continue;
      if (r.x >= p.x && r.y >= p.y) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) {
    if (a.x != b.x) return a.x > b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.id < b.id;
  });
  return out;
}

}  // namespace srr
