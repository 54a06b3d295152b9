#include "srr/range_tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "srr/util.hpp"

namespace srr {
namespace {

constexpr char kMagic[4] = {'S', 'R', 'T', '1'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v),
                        static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, uint64_t v) {
  put_u32(os, static_cast<uint32_t>(v));
  put_u32(os, static_cast<uint32_t>(v >> 32));
}

uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw std::runtime_error("range tree image: truncated");
  return static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
}

uint64_t get_u64(std::istream& is) {
  const uint64_t lo = get_u32(is);
  return lo | static_cast<uint64_t>(get_u32(is)) << 32;
}

}  // namespace

CompactRangeTree CompactRangeTree::build(std::span<const Point> rank_points,
                                         uint32_t stride,
                                         LevelSequences* keep_levels) {
  if (stride < 1)
    throw std::invalid_argument("CompactRangeTree: stride must be >= 1");
  if (rank_points.empty())
    throw std::invalid_argument("CompactRangeTree: empty point set");

  CompactRangeTree t;
  t.n_ = static_cast<uint32_t>(rank_points.size());
  t.depth_ = ceil_log2(t.n_);
  t.stride_ = stride;
  t.pts_by_id_.resize(t.n_);
  for (const Point& p : rank_points) t.pts_by_id_[p.id] = p;

  // Root sequence: ids in ascending y. Each further level stable-partitions
  // every node's sequence by the child direction of its x-rank.
  std::vector<uint32_t> cur(t.n_);
  {
    std::vector<uint32_t> by_y(t.n_ + 1);
    for (const Point& p : rank_points) by_y[p.y] = p.id;
    for (uint32_t i = 0; i < t.n_; ++i) cur[i] = by_y[i + 1];
  }

  t.bits_.resize(t.depth_);
  t.seg_start_.resize(t.depth_ + 1);
  t.seg_start_[0] = {0, t.n_};
  if (keep_levels) keep_levels->clear();

  auto note_level = [&](uint32_t level, const std::vector<uint32_t>& ids) {
    if (t.stored_level(level)) t.stored_.push_back(ids);
    if (keep_levels) keep_levels->push_back(ids);
  };
  note_level(0, cur);

  std::vector<uint32_t> nxt(t.n_);
  for (uint32_t l = 0; l < t.depth_; ++l) {
    const uint32_t nodes = 1u << l;
    const int64_t width = int64_t{1} << (t.depth_ - l);
    BitVector bits(t.n_);
    auto& starts = t.seg_start_[l + 1];
    starts.assign(2 * nodes + 1, 0);

    // Count left-child sizes per node, then place both halves.
    for (uint32_t o = 0; o < nodes; ++o) {
      const uint32_t lo = t.seg_start_[l][o], hi = t.seg_start_[l][o + 1];
      const int64_t mid = o * width + width / 2;  // x-ranks <= mid go left
      uint32_t left_count = 0;
      for (uint32_t i = lo; i < hi; ++i)
        if (t.pts_by_id_[cur[i]].x <= mid) ++left_count;
      starts[2 * o + 1] = starts[2 * o] + left_count;
      starts[2 * o + 2] = starts[2 * o] + (hi - lo);
      uint32_t lpos = starts[2 * o], rpos = starts[2 * o + 1];
      for (uint32_t i = lo; i < hi; ++i) {
        const uint32_t id = cur[i];
        if (t.pts_by_id_[id].x <= mid) {
          nxt[lpos++] = id;
        } else {
          bits.set(i);
          nxt[rpos++] = id;
        }
      }
    }
    bits.finish();
    t.bits_[l] = std::move(bits);
    cur.swap(nxt);
    note_level(l + 1, cur);
  }
  return t;
}

void CompactRangeTree::derive_segments() {
  seg_start_.assign(depth_ + 1, {});
  seg_start_[0] = {0, n_};
  for (uint32_t l = 0; l < depth_; ++l) {
    const uint32_t nodes = 1u << l;
    auto& starts = seg_start_[l + 1];
    starts.assign(2 * nodes + 1, 0);
    for (uint32_t o = 0; o < nodes; ++o) {
      const uint32_t lo = seg_start_[l][o], hi = seg_start_[l][o + 1];
      const uint32_t zeros = static_cast<uint32_t>(bits_[l].rank0(hi) -
                                                   bits_[l].rank0(lo));
      starts[2 * o + 1] = starts[2 * o] + zeros;
      starts[2 * o + 2] = starts[2 * o] + (hi - lo);
    }
  }
}

NodeRef CompactRangeTree::navigate(NodeRef v, NavMove m,
                                   uint32_t ancestor_level) const {
  if (v.level > depth_ || v.offset >= (1u << v.level))
    throw std::out_of_range("navigate: node outside tree");
  switch (m) {
    case NavMove::kParent:
      if (v.level == 0) throw std::out_of_range("navigate: root has no parent");
      return {v.level - 1, v.offset >> 1};
    case NavMove::kLeft:
      if (is_leaf(v)) throw std::out_of_range("navigate: leaf has no child");
      return {v.level + 1, 2 * v.offset};
    case NavMove::kRight:
      if (is_leaf(v)) throw std::out_of_range("navigate: leaf has no child");
      return {v.level + 1, 2 * v.offset + 1};
    case NavMove::kSibling:
      if (v.level == 0)
        throw std::out_of_range("navigate: root has no sibling");
      return {v.level, v.offset ^ 1};
    case NavMove::kAncestorAtLevel:
      if (ancestor_level > v.level)
        throw std::out_of_range("navigate: ancestor level below node");
      return {ancestor_level, v.offset >> (v.level - ancestor_level)};
  }
  throw std::out_of_range("navigate: unknown move");
}

uint32_t CompactRangeTree::node_count(NodeRef v) const {
  return seg_start_[v.level][v.offset + 1] - seg_start_[v.level][v.offset];
}

uint32_t CompactRangeTree::node_begin(NodeRef v) const {
  return seg_start_[v.level][v.offset];
}

std::pair<int64_t, int64_t> CompactRangeTree::x_span(NodeRef v) const {
  const int64_t width = int64_t{1} << (depth_ - v.level);
  const int64_t lo = static_cast<int64_t>(v.offset) * width + 1;
  const int64_t hi = std::min<int64_t>(lo + width - 1, n_);
  return {lo, hi};
}

NodeRef CompactRangeTree::leaf_for_x_rank(int64_t x) const {
  if (x < 1 || x > n_) throw std::out_of_range("leaf_for_x_rank");
  return {depth_, static_cast<uint32_t>(x - 1)};
}

Point CompactRangeTree::point_at(NodeRef v, uint32_t i,
                                 ProbeCounters* pc) const {
  if (i >= node_count(v)) throw std::out_of_range("point_at: index too large");
  uint32_t level = v.level, offset = v.offset;
  uint32_t pos = seg_start_[level][offset] + i;
  while (!stored_level(level)) {
    const BitVector& b = bits_[level];
    const uint32_t seg = seg_start_[level][offset];
    if (b.get(pos)) {
      const uint32_t local =
          static_cast<uint32_t>(b.rank1(pos) - b.rank1(seg));
      offset = 2 * offset + 1;
      pos = seg_start_[level + 1][offset] + local;
    } else {
      const uint32_t local =
          static_cast<uint32_t>(b.rank0(pos) - b.rank0(seg));
      offset = 2 * offset;
      pos = seg_start_[level + 1][offset] + local;
    }
    ++level;
    if (pc) ++pc->decode_hops;
  }
  if (pc) {
    ++pc->stored_reads;
    ++pc->points_decoded;
  }
  // Stored levels are kept in build order: every stride-th level plus the
  // leaf level when the stride does not land on it.
  uint32_t slot = level / stride_;
  if (level == depth_ && depth_ % stride_ != 0) slot = depth_ / stride_ + 1;
  return pts_by_id_[stored_[slot][pos]];
}

IndexRange CompactRangeTree::node_range(int64_t c, int64_t d,
                                        NodeRef v) const {
  c = std::max<int64_t>(c, 1);
  d = std::min<int64_t>(d, n_);
  if (c > d) return IndexRange::none();
  IndexRange r{static_cast<uint32_t>(c - 1), static_cast<uint32_t>(d - 1)};
  for (uint32_t l = 0; l < v.level; ++l) {
    const bool right = (v.offset >> (v.level - 1 - l)) & 1;
    r = child_range({l, v.offset >> (v.level - l)}, right, r);
    if (r.empty()) return IndexRange::none();
  }
  return r;
}

IndexRange CompactRangeTree::child_range(NodeRef v, bool right_child,
                                         IndexRange r) const {
  if (r.empty()) return IndexRange::none();
  const BitVector& b = bits_[v.level];
  const uint32_t seg = seg_start_[v.level][v.offset];
  const uint32_t glo = seg + r.lo, ghi = seg + r.hi + 1;
  uint32_t lo, hi;
  if (right_child) {
    const uint64_t base = b.rank1(seg);
    lo = static_cast<uint32_t>(b.rank1(glo) - base);
    hi = static_cast<uint32_t>(b.rank1(ghi) - base);
  } else {
    const uint64_t base = b.rank0(seg);
    lo = static_cast<uint32_t>(b.rank0(glo) - base);
    hi = static_cast<uint32_t>(b.rank0(ghi) - base);
  }
  if (lo == hi) return IndexRange::none();
  return {lo, hi - 1};
}

size_t CompactRangeTree::memory_bytes() const {
  size_t b = pts_by_id_.size() * sizeof(Point);
  for (const auto& bv : bits_) b += bv.words().size() * 8 + bv.size() / 4;
  for (const auto& s : seg_start_) b += s.size() * 4;
  for (const auto& s : stored_) b += s.size() * 4;
  return b;
}

void CompactRangeTree::save(std::ostream& os) const {
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, n_);
  put_u32(os, depth_);
  put_u32(os, stride_);
  for (const auto& bv : bits_) {
    put_u64(os, bv.size());
    for (uint64_t w : bv.words()) put_u64(os, w);
  }
  put_u32(os, static_cast<uint32_t>(stored_.size()));
  for (const auto& ids : stored_) {
    put_u32(os, static_cast<uint32_t>(ids.size()));
    for (uint32_t id : ids) put_u32(os, id);
  }
  for (const Point& p : pts_by_id_) {
    put_u32(os, static_cast<uint32_t>(p.x));
    put_u32(os, static_cast<uint32_t>(p.y));
  }
}

CompactRangeTree CompactRangeTree::load(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || !std::equal(magic, magic + 4, kMagic))
    throw std::runtime_error("range tree image: bad magic");
  if (get_u32(is) != kVersion)
    throw std::runtime_error("range tree image: unsupported version");
  CompactRangeTree t;
  t.n_ = get_u32(is);
  t.depth_ = get_u32(is);
  t.stride_ = get_u32(is);
  if (t.n_ == 0 || t.stride_ < 1 || t.depth_ != ceil_log2(t.n_))
    throw std::runtime_error("range tree image: inconsistent header");
  t.bits_.resize(t.depth_);
  for (uint32_t l = 0; l < t.depth_; ++l) {
    const uint64_t bits = get_u64(is);
    if (bits != t.n_) throw std::runtime_error("range tree image: bad level");
    std::vector<uint64_t> words((bits + 63) / 64);
    for (auto& w : words) w = get_u64(is);
    t.bits_[l].assign_words(bits, std::move(words));
  }
  const uint32_t stored_count = get_u32(is);
  t.stored_.resize(stored_count);
  for (auto& ids : t.stored_) {
    const uint32_t len = get_u32(is);
    if (len != t.n_) throw std::runtime_error("range tree image: bad stored level");
    ids.resize(len);
    for (auto& id : ids) {
      id = get_u32(is);
      if (id >= t.n_) throw std::runtime_error("range tree image: id range");
    }
  }
  t.pts_by_id_.resize(t.n_);
  for (uint32_t id = 0; id < t.n_; ++id) {
    const int64_t x = get_u32(is), y = get_u32(is);
    t.pts_by_id_[id] = {x, y, id};
  }
  uint32_t expect_stored = 0;
  for (uint32_t l = 0; l <= t.depth_; ++l)
    if (t.stored_level(l)) ++expect_stored;
  if (expect_stored != stored_count)
    throw std::runtime_error("range tree image: stored level count");
  t.derive_segments();
  return t;
}

}  // namespace srr
