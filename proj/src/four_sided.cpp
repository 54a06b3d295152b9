#include "srr/four_sided.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>

#include "srr/util.hpp"

namespace srr {

namespace {

// Merges two ascending-x streams (x values are distinct ranks).
class TwoWayMergeStream final : public PointStream {
 public:
  TwoWayMergeStream(std::unique_ptr<PointStream> l,
                    std::unique_ptr<PointStream> r)
      : l_(std::move(l)), r_(std::move(r)) {}

  std::optional<Point> next() override {
    if (!primed_) {
      pl_ = l_->next();
      pr_ = r_->next();
      primed_ = true;
    }
    if (!pl_ && !pr_) return std::nullopt;
    const bool take_left = pl_ && (!pr_ || pl_->x < pr_->x);
    if (take_left) {
      const Point p = *pl_;
      pl_ = l_->next();
      return p;
    }
    const Point p = *pr_;
    pr_ = r_->next();
    return p;
  }

  const QueryStats& stats() const override {
    snap_ = l_->stats();
    const QueryStats& r = r_->stats();
    snap_.probes.add(r.probes);
    snap_.streams_opened += r.streams_opened;
    snap_.streams_drained += r.streams_drained;
    snap_.escalations += r.escalations;
    snap_.escalations_under_sample_threshold +=
        r.escalations_under_sample_threshold;
    return snap_;
  }

 private:
  std::unique_ptr<PointStream> l_;
  std::unique_ptr<PointStream> r_;
  std::optional<Point> pl_, pr_;
  bool primed_ = false;
  mutable QueryStats snap_;
};

}  // namespace

// Walks one grouped node: low boundary group, sample-driven middle groups,
// high boundary group. Group indexes hand out points in internal coordinates
// whose id is the member's slot in node->pts, so emission just looks the
// real point up.
class GroupedStream final : public PointStream {
 public:
  GroupedStream(const FourSidedIndex::GroupedNode* g, int64_t a, int64_t b,
                int64_t cp, uint32_t gi, uint32_t gj)
      : g_(g), a_(a), b_(b), cp_(cp), gi_(gi), gj_(gj) {}

  std::optional<Point> next() override {
    while (true) {
      if (sub_) {
        if (auto p = sub_->next()) return g_->pts[p->id];
        close_sub();
        if (escalating_) {
          escalating_ = false;
        } else if (st_ == St::kLow) {
          st_ = gi_ == gj_ ? St::kDone
                           : (gj_ > gi_ + 1 ? St::kMid : St::kHigh);
        } else if (st_ == St::kHigh) {
          st_ = St::kDone;
        }
        continue;
      }
      switch (st_) {
        case St::kLow:
          open_sub(g_->groups[gi_].iter({a_, b_, std::nullopt, cp_}));
          continue;
        case St::kHigh:
          open_sub(g_->groups[gj_].iter({a_, b_, std::nullopt, cp_}));
          continue;
        case St::kDone:
          return std::nullopt;
        case St::kMid:
          break;
      }
      if (!mid_opened_) {
        mid_opened_ = true;
        const size_t lo = static_cast<size_t>(gi_ + 1) * g_->group_len;
        const size_t hi = static_cast<size_t>(gj_) * g_->group_len - 1;
        dstream_.emplace(
            g_->samples->iter({g_->xs[lo], g_->xs[hi], std::nullopt, cp_}));
        stats_.streams_opened++;
        look_ = dstream_->next();
      }
      if (cur_group_ != kNoGroup &&
          (!look_ || look_->id / g_->group_len != cur_group_)) {
        if (!buffer_.empty()) {
          const uint32_t idx = buffer_.front();
          buffer_.pop_front();
          return g_->pts[idx];
        }
        cur_group_ = kNoGroup;
        continue;
      }
      if (!look_) {
        stats_.probes.add(dstream_->stats().probes);
        stats_.streams_drained++;
        dstream_.reset();
        st_ = St::kHigh;
        continue;
      }
      const uint32_t t = look_->id / g_->group_len;
      if (cur_group_ == kNoGroup) {
        cur_group_ = t;
        cur_count_ = 0;
      }
      buffer_.push_back(look_->id);
      cur_count_++;
      look_ = dstream_->next();
      if (cur_count_ == g_->sample_count(t) &&
          g_->group_size(t) > g_->sample_count(t)) {
        stats_.escalations++;
        if (cur_count_ < g_->sample_len)
          stats_.escalations_under_sample_threshold++;
        buffer_.clear();
        cur_group_ = kNoGroup;
        escalating_ = true;
        open_sub(g_->groups[t].iter({std::nullopt, std::nullopt, std::nullopt,
                                     cp_}));
      }
    }
  }

  const QueryStats& stats() const override {
    snap_ = stats_;
    if (sub_) snap_.probes.add(sub_->stats().probes);
    if (dstream_) snap_.probes.add(dstream_->stats().probes);
    return snap_;
  }

 private:
  enum class St { kLow, kMid, kHigh, kDone };
  static constexpr uint32_t kNoGroup = 0xffffffffu;

  void open_sub(SortedIterator it) {
    sub_.emplace(std::move(it));
    stats_.streams_opened++;
  }
  void close_sub() {
    stats_.probes.add(sub_->stats().probes);
    stats_.streams_drained++;
    sub_.reset();
  }

  const FourSidedIndex::GroupedNode* g_;
  int64_t a_, b_, cp_;
  uint32_t gi_, gj_;
  St st_ = St::kLow;
  bool mid_opened_ = false;
  bool escalating_ = false;
  std::optional<SortedIterator> sub_;
  std::optional<SortedIterator> dstream_;
  std::optional<Point> look_;
  std::deque<uint32_t> buffer_;
  uint32_t cur_group_ = kNoGroup;
  uint32_t cur_count_ = 0;
  QueryStats stats_;
  mutable QueryStats snap_;
};

uint32_t FourSidedIndex::GroupedNode::group_size(uint32_t t) const {
  const size_t lo = static_cast<size_t>(t) * group_len;
  const size_t hi = std::min(pts.size(), lo + group_len);
  return static_cast<uint32_t>(hi - lo);
}

uint32_t FourSidedIndex::GroupedNode::sample_count(uint32_t t) const {
  return std::min(sample_len, group_size(t));
}

std::unique_ptr<PointStream> FourSidedIndex::GroupedNode::stream(
    int64_t a, int64_t b, int64_t c) const {
  auto empty = [] {
    return std::make_unique<VectorStream>(std::vector<Point>{});
  };
  if (pts.empty()) return empty();
  const int64_t cp = flip ? flip_base - c : c;
  const auto lo_it = std::lower_bound(xs.begin(), xs.end(), a);
  const auto hi_it = std::upper_bound(xs.begin(), xs.end(), b);
  if (lo_it >= hi_it) return empty();
  const uint32_t gi =
      static_cast<uint32_t>(lo_it - xs.begin()) / group_len;
  const uint32_t gj =
      static_cast<uint32_t>(hi_it - xs.begin() - 1) / group_len;
  return std::make_unique<GroupedStream>(this, a, b, cp, gi, gj);
}

size_t FourSidedIndex::GroupedNode::memory_bytes() const {
  size_t bytes = pts.size() * sizeof(Point) + xs.size() * sizeof(int64_t);
  for (const auto& g : groups) bytes += g.memory_bytes();
  if (samples) bytes += samples->memory_bytes();
  return bytes;
}

FourSidedIndex::GroupedNode FourSidedIndex::build_node(std::vector<Point> pts,
                                                       bool flip,
                                                       int64_t flip_base,
                                                       uint32_t group_len,
                                                       uint32_t sample_len) {
  GroupedNode node;
  node.flip = flip;
  node.flip_base = flip_base;
  node.group_len = group_len;
  node.sample_len = sample_len;
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return a.x < b.x; });
  node.pts = std::move(pts);
  const uint32_t m = static_cast<uint32_t>(node.pts.size());
  node.xs.resize(m);
  for (uint32_t i = 0; i < m; ++i) node.xs[i] = node.pts[i].x;

  ThreeSidedIndex::Config tc;
  tc.build_flipped = false;
  const auto internal = [&](uint32_t i) {
    const Point& p = node.pts[i];
    return Point{p.x, flip ? flip_base - p.y : p.y, i};
  };
  const uint32_t n_groups = (m + group_len - 1) / group_len;
  node.groups.reserve(n_groups);
  std::vector<Point> all_samples;
  for (uint32_t t = 0; t < n_groups; ++t) {
    const uint32_t lo = t * group_len;
    const uint32_t hi = std::min(m, lo + group_len);
    std::vector<Point> members;
    members.reserve(hi - lo);
    for (uint32_t i = lo; i < hi; ++i) members.push_back(internal(i));
    std::vector<Point> by_depth = members;
    std::sort(by_depth.begin(), by_depth.end(),
              [](const Point& a, const Point& b) { return a.y < b.y; });
    const uint32_t take = std::min<uint32_t>(sample_len, hi - lo);
    all_samples.insert(all_samples.end(), by_depth.begin(),
                       by_depth.begin() + take);
    node.groups.push_back(ThreeSidedIndex::build(members, tc));
  }
  if (n_groups >= 3)
    node.samples =
        std::make_unique<ThreeSidedIndex>(ThreeSidedIndex::build(all_samples, tc));
  return node;
}

FourSidedIndex FourSidedIndex::build(std::span<const Point> original,
                                     Config cfg) {
  FourSidedIndex f;
  auto [rank_pts, map] = rank_space_reduce(original);
  f.map_ = std::move(map);
  f.n_ = rank_pts.size();
  f.pad_ = 1;
  f.depth_ = 0;
  while (f.pad_ < f.n_) {
    f.pad_ <<= 1;
    f.depth_++;
  }
  const uint32_t lg = std::max<uint32_t>(1, ceil_log2(std::max<size_t>(2, f.n_)));
  f.group_len_ = cfg.group_len ? cfg.group_len : lg * lg * lg;
  f.sample_len_ = cfg.sample_len
                      ? cfg.sample_len
                      : std::max<uint32_t>(1, ceil_log2(std::max<uint32_t>(2, lg)));

  f.by_y_ = rank_pts;
  std::sort(f.by_y_.begin(), f.by_y_.end(),
            [](const Point& a, const Point& b) { return a.y < b.y; });

  std::vector<std::vector<Point>> node_pts(2 * static_cast<size_t>(f.pad_));
  for (const Point& p : rank_pts)
    node_pts[f.pad_ + static_cast<size_t>(p.y) - 1] = {p};
  for (uint32_t k = f.pad_ - 1; k >= 1; --k) {
    const auto& l = node_pts[2 * k];
    const auto& r = node_pts[2 * k + 1];
    auto& dst = node_pts[k];
    dst.reserve(l.size() + r.size());
    dst.insert(dst.end(), l.begin(), l.end());
    dst.insert(dst.end(), r.begin(), r.end());
  }
  const int64_t flip_base = static_cast<int64_t>(f.n_) + 1;
  f.nodes_.resize(node_pts.size());
  for (size_t k = 2; k < node_pts.size(); ++k) {
    if (node_pts[k].empty()) continue;
    // Left children answer queries bounded from below in y, so they store
    // mirrored depths; right children answer the upper-bounded flavor as is.
    f.nodes_[k] = build_node(std::move(node_pts[k]), k % 2 == 0, flip_base,
                             f.group_len_, f.sample_len_);
  }
  return f;
}

SortedIterator FourSidedIndex::iter(const QueryRect& q) const {
  const QueryRect r = map_.reduce(q);
  const int64_t n = static_cast<int64_t>(n_);
  const int64_t a = std::max<int64_t>(r.x_lo.value_or(1), 1);
  const int64_t b = std::min<int64_t>(r.x_hi.value_or(n), n);
  const int64_t c = std::max<int64_t>(r.y_lo.value_or(1), 1);
  const int64_t d = std::min<int64_t>(r.y_hi.value_or(n), n);
  if (a > b || c > d) return empty_iterator();
  std::unique_ptr<PointStream> rank_stream;
  if (c == d) {
    const Point& p = by_y_[static_cast<size_t>(c) - 1];
    std::vector<Point> hit;
    if (p.x >= a && p.x <= b) hit.push_back(p);
    rank_stream = std::make_unique<VectorStream>(std::move(hit));
  } else {
    uint32_t l = pad_ + static_cast<uint32_t>(c) - 1;
    uint32_t rr = pad_ + static_cast<uint32_t>(d) - 1;
    while (l != rr) {
      l >>= 1;
      rr >>= 1;
    }
    rank_stream = std::make_unique<TwoWayMergeStream>(
        nodes_[2 * l].stream(a, b, c), nodes_[2 * l + 1].stream(a, b, d));
  }
  return SortedIterator(std::make_unique<MappedStream<RankSpaceMap>>(
      std::move(rank_stream), &map_));
}

size_t FourSidedIndex::memory_bytes() const {
  size_t bytes = by_y_.size() * sizeof(Point) +
                 nodes_.capacity() * sizeof(GroupedNode);
  for (const auto& nd : nodes_) bytes += nd.memory_bytes();
  bytes += (map_.x_sorted().size() + map_.y_sorted().size()) * sizeof(int64_t);
  return bytes;
}

}  // namespace srr
