#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "srr/points.hpp"
#include "srr/probe.hpp"

namespace srr {

// One pull of a lazily evaluated query result. Implementations own their
// QueryStats and keep them current after every pull.
class PointStream {
 public:
  virtual ~PointStream() = default;
  virtual std::optional<Point> next() = 0;
  virtual const QueryStats& stats() const {
    static const QueryStats empty{};
    return empty;
  }
};

// Online result stream. Emissions are x-monotone (ascending for reporting
// queries, descending for staircase walks), each point appears once, and a
// fresh iterator over the same query replays the identical sequence, so any
// consumed prefix is stable. Once next() returns nullopt it stays exhausted.
class SortedIterator {
 public:
  explicit SortedIterator(std::unique_ptr<PointStream> impl)
      : impl_(std::move(impl)) {}

  std::optional<Point> next() {
    if (done_) return std::nullopt;
    auto p = impl_->next();
    if (!p) {
      done_ = true;
      return std::nullopt;
    }
    last_ = p;
    return p;
  }

  bool exhausted() const { return done_; }
  std::optional<Point> last() const { return last_; }
  const QueryStats& stats() const { return impl_->stats(); }

 private:
  std::unique_ptr<PointStream> impl_;
  std::optional<Point> last_;
  bool done_ = false;
};

// Pulls at most k further points. Calling again continues where the previous
// call stopped, so doubling k re-reads nothing.
inline std::vector<Point> online_collect(SortedIterator& it, size_t k) {
  std::vector<Point> out;
  out.reserve(std::min<size_t>(k, 1024));
  while (out.size() < k) {
    auto p = it.next();
    if (!p) break;
    out.push_back(*p);
  }
  return out;
}

// Fixed streams used for degenerate queries and tests.
class VectorStream final : public PointStream {
 public:
  explicit VectorStream(std::vector<Point> pts) : pts_(std::move(pts)) {}
  std::optional<Point> next() override {
    if (pos_ >= pts_.size()) return std::nullopt;
    return pts_[pos_++];
  }

 private:
  std::vector<Point> pts_;
  size_t pos_ = 0;
};

inline SortedIterator empty_iterator() {
  return SortedIterator(std::make_unique<VectorStream>(std::vector<Point>{}));
}

// Adapts a rank-space stream to original coordinates.
template <typename MapT>
class MappedStream final : public PointStream {
 public:
  MappedStream(std::unique_ptr<PointStream> inner, const MapT* map)
      : inner_(std::move(inner)), map_(map) {}
  std::optional<Point> next() override {
    auto p = inner_->next();
    if (!p) return std::nullopt;
    return map_->to_original(*p);
  }
  const QueryStats& stats() const override { return inner_->stats(); }

 private:
  std::unique_ptr<PointStream> inner_;
  const MapT* map_;
};

}  // namespace srr
