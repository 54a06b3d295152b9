#include "srr/geometry.hpp"

#include <algorithm>
#include <memory>

namespace srr {

namespace {

// Rank-space staircase: repeatedly the max-x point of the shrinking
// rectangle [a, b] x [c, d], with b and c moving strictly past each emission.
class StaircaseStream final : public PointStream {
 public:
  StaircaseStream(const SuccessorIndex* idx, int64_t a, int64_t b, int64_t c,
                  int64_t d)
      : idx_(idx), a_(a), d_(d), b_(b), c_(c) {}

  std::optional<Point> next() override {
    if (done_) return std::nullopt;
    const auto p = idx_->predecessor_rank(b_, c_, d_, &stats_.probes);
    if (!p || p->x < a_) {
      done_ = true;
      return std::nullopt;
    }
    b_ = p->x - 1;
    c_ = p->y + 1;
    if (b_ < a_ || c_ > d_) done_ = true;
    return *p;
  }

  const QueryStats& stats() const override { return stats_; }

 private:
  const SuccessorIndex* idx_;
  int64_t a_, d_;
  int64_t b_, c_;
  bool done_ = false;
  QueryStats stats_;
};

}  // namespace

SortedIterator maximal_points(const SuccessorIndex& idx, const QueryRect& q) {
  const QueryRect r = idx.map().reduce(q);
  const int64_t n = static_cast<int64_t>(idx.size());
  auto stream = std::make_unique<StaircaseStream>(
      &idx, std::max<int64_t>(r.x_lo.value_or(1), 1),
      std::min<int64_t>(r.x_hi.value_or(n), n),
      std::max<int64_t>(r.y_lo.value_or(1), 1),
      std::min<int64_t>(r.y_hi.value_or(n), n));
  return SortedIterator(std::make_unique<MappedStream<RankSpaceMap>>(
      std::move(stream), &idx.map()));
}

SortedIterator rectangularly_visible(const SuccessorIndex& idx, int64_t qx,
                                     int64_t qy) {
  QueryRect q;
  q.x_hi = qx;
  q.y_hi = qy;
  return maximal_points(idx, q);
}

std::vector<Point> oracle_visible(std::span<const Point> pts, int64_t qx,
                                  int64_t qy) {
  std::vector<Point> out;
  for (const Point& p : pts) {
    if (p.x > qx || p.y > qy) continue;
    bool blocked = false;
    for (const Point& r : pts) {
      if (r.id == p.id) continue;
      if (r.x >= p.x && r.x <= qx && r.y >= p.y && r.y <= qy) {
        blocked = true;
        break;
      }
    }
    if (!blocked) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) {
    if (a.x != b.x) return a.x > b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.id < b.id;
  });
  return out;
}

}  // namespace srr
