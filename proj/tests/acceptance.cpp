// Acceptance gate: one line per criterion, nonzero exit on any failure.
//
//   1 exhaustive oracle sweep on tiny rank grids
//   2 randomized oracle equality at n = 2^8, 2^10, 2^12
//   3 probe-shape bounds (successor node visits, open streams, escalations)
//   4 iterator contracts (prefix stability, strict x-monotonicity)
//   5 text operations, exhaustive over short binary texts, plus fixtures
//   6 geometry walks against the quadratic dominance oracle
//   7 serialization round trips

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "srr/four_sided.hpp"
#include "srr/geometry.hpp"
#include "srr/points.hpp"
#include "srr/serialize.hpp"
#include "srr/stream.hpp"
#include "srr/successor.hpp"
#include "srr/text_index.hpp"
#include "srr/three_sided.hpp"
#include "srr/util.hpp"

using namespace srr;
using Clock = std::chrono::steady_clock;

namespace {

struct Tally {
  size_t checks = 0;
  size_t failures = 0;
  std::string first;
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
};

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Point> drain(SortedIterator it) {
  std::vector<Point> out;
  while (auto p = it.next()) out.push_back(*p);
  return out;
}

std::vector<Point> random_points(size_t n, int64_t coord_max,
                                 std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> d(1, coord_max);
  std::vector<Point> pts(n);
  for (size_t i = 0; i < n; ++i)
    pts[i] = Point{d(rng), d(rng), static_cast<uint32_t>(i)};
  return pts;
}

std::vector<Point> random_grid(size_t n, std::mt19937_64& rng) {
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

// Up to m points on a g x g grid, distinct in both coordinates.
std::vector<Point> grid_subset(size_t m, int64_t g, std::mt19937_64& rng) {
  std::vector<int64_t> xs(static_cast<size_t>(g)), ys(static_cast<size_t>(g));
  std::iota(xs.begin(), xs.end(), 1);
  std::iota(ys.begin(), ys.end(), 1);
  std::shuffle(xs.begin(), xs.end(), rng);
  std::shuffle(ys.begin(), ys.end(), rng);
  std::vector<Point> pts(m);
  for (size_t i = 0; i < m; ++i)
    pts[i] = Point{xs[i], ys[i], static_cast<uint32_t>(i)};
  return pts;
}

std::string describe(const QueryRect& q) {
  const auto s = [](const std::optional<int64_t>& v) {
    return v ? std::to_string(*v) : std::string("*");
  };
  return "[" + s(q.x_lo) + "," + s(q.x_hi) + "]x[" + s(q.y_lo) + "," +
         s(q.y_hi) + "]";
}

QueryRect loose_rect(int64_t lo, int64_t hi, std::mt19937_64& rng,
                     unsigned unset_one_in) {
  std::uniform_int_distribution<int64_t> d(lo, hi);
  int64_t a = d(rng), b = d(rng), c = d(rng), e = d(rng);
  if (a > b) std::swap(a, b);
  if (c > e) std::swap(c, e);
  QueryRect q{a, b, c, e};
  if (unset_one_in) {
    if (rng() % unset_one_in == 0) q.x_lo.reset();
    if (rng() % unset_one_in == 0) q.x_hi.reset();
    if (rng() % unset_one_in == 0) q.y_lo.reset();
    if (rng() % unset_one_in == 0) q.y_hi.reset();
  }
  return q;
}

// ---- criterion 1: exhaustive oracle sweep on tiny rank grids ---------------

Tally criterion1() {
  Tally t;
  std::mt19937_64 rng(1001);
  constexpr int64_t kGrid = 6;
  constexpr int kSets = 500;
  for (int set = 0; set < kSets; ++set) {
    const size_t m = 1 + rng() % kGrid;
    const auto pts = grid_subset(m, kGrid, rng);
    const auto succ = SuccessorIndex::build(pts);
    const auto three = ThreeSidedIndex::build(pts);
    const auto four = FourSidedIndex::build(pts);
    const auto tag = [&](const char* op, const QueryRect& q) {
      return "set " + std::to_string(set) + " " + op + " " + describe(q);
    };

    for (int64_t a = 0; a <= kGrid + 1; ++a)
      for (int64_t c = 0; c <= kGrid + 1; ++c)
        for (int64_t d = c; d <= kGrid + 1; ++d) {
          const QueryRect q{a, std::nullopt, c, d};
          t.expect(succ.successor(a, c, d) == oracle_successor(pts, q),
                   tag("succ", q));
        }

    for (int64_t a = 0; a <= kGrid + 1; ++a)
      for (int64_t b = a; b <= kGrid + 1; ++b) {
        for (int64_t c = 0; c <= kGrid + 1; ++c) {
          const QueryRect below{a, b, std::nullopt, c};
          t.expect(drain(three.iter(below)) ==
                       oracle_report_sorted(pts, below),
                   tag("3sided", below));
          const QueryRect above{a, b, c, std::nullopt};
          t.expect(drain(three.iter(above)) ==
                       oracle_report_sorted(pts, above),
                   tag("3sided", above));
          for (int64_t d = c; d <= kGrid + 1; ++d) {
            const QueryRect q{a, b, c, d};
            const auto want = oracle_report_sorted(pts, q);
            t.expect(drain(succ.sorted(q)) == want, tag("sorted", q));
            t.expect(drain(four.iter(q)) == want, tag("4sided", q));
            t.expect(drain(maximal_points(succ, q)) == oracle_maximal(pts, q),
                     tag("maximal", q));
          }
        }
      }
  }
  t.note = std::to_string(t.checks) + " queries over " +
           std::to_string(kSets) + " sampled sets";
  return t;
}

// ---- criterion 2: randomized oracle equality --------------------------------

Tally criterion2() {
  Tally t;
  std::mt19937_64 rng(2002);
  constexpr size_t kQueries = 10000;
  for (const size_t n : {size_t{256}, size_t{1024}, size_t{4096}}) {
    const auto pts = random_points(n, static_cast<int64_t>(2 * n), rng);
    const auto succ = SuccessorIndex::build(pts);
    const auto three = ThreeSidedIndex::build(pts);
    const auto four = FourSidedIndex::build(pts);
    const int64_t hi = static_cast<int64_t>(2 * n) + 2;
    std::uniform_int_distribution<int64_t> dv(-1, hi);

    for (size_t i = 0; i < kQueries; ++i) {
      const int64_t a = dv(rng);
      int64_t c = dv(rng), d = dv(rng);
      if (c > d) std::swap(c, d);
      const QueryRect q{a, std::nullopt, c, d};
      t.expect(succ.successor(a, c, d) == oracle_successor(pts, q),
               "n=" + std::to_string(n) + " succ " + describe(q));
    }
    for (size_t i = 0; i < kQueries; ++i) {
      const QueryRect q = loose_rect(-1, hi, rng, 5);
      auto it = succ.sorted(q);
      if (i % 2 == 0) {
        const size_t k = rng() % (n / 4 + 1);
        t.expect(online_collect(it, k) == oracle_report_sorted(pts, q, k),
                 "n=" + std::to_string(n) + " sorted k=" + std::to_string(k) +
                     " " + describe(q));
      } else {
        t.expect(drain(std::move(it)) == oracle_report_sorted(pts, q),
                 "n=" + std::to_string(n) + " sorted " + describe(q));
      }
    }
    for (size_t i = 0; i < kQueries; ++i) {
      QueryRect q = loose_rect(-1, hi, rng, 6);
      if (rng() & 1)
        q.y_lo.reset();
      else
        q.y_hi.reset();
      t.expect(drain(three.iter(q)) == oracle_report_sorted(pts, q),
               "n=" + std::to_string(n) + " 3sided " + describe(q));
    }
    for (size_t i = 0; i < kQueries; ++i) {
      const QueryRect q = loose_rect(-1, hi, rng, 6);
      t.expect(drain(four.iter(q)) == oracle_report_sorted(pts, q),
               "n=" + std::to_string(n) + " 4sided " + describe(q));
    }
  }
  t.note = "10^4 queries per structure per n";
  return t;
}

// ---- criterion 3: probe shapes ----------------------------------------------

Tally criterion3() {
  Tally t;
  std::mt19937_64 rng(3003);
  constexpr size_t kQueries = 10000;

  // (a) successor node visits stay within 2*ceil(log2 depth) + 4.
  size_t worst_nodes = 0;
  for (const size_t n : {size_t{256}, size_t{1024}, size_t{4096}}) {
    const auto pts = random_points(n, static_cast<int64_t>(2 * n), rng);
    const auto succ = SuccessorIndex::build(pts);
    const size_t bound =
        2 * ceil_log2(std::max<uint32_t>(succ.tree().depth(), 1)) + 4;
    std::uniform_int_distribution<int64_t> dv(-1,
                                              static_cast<int64_t>(2 * n) + 2);
    for (size_t i = 0; i < kQueries; ++i) {
      const int64_t a = dv(rng);
      int64_t c = dv(rng), d = dv(rng);
      if (c > d) std::swap(c, d);
      ProbeCounters pc;
      succ.successor(a, c, d, &pc);
      worst_nodes = std::max(worst_nodes, pc.nodes_visited);
      t.expect(pc.nodes_visited <= bound,
               "n=" + std::to_string(n) + " successor visited " +
                   std::to_string(pc.nodes_visited) + " > " +
                   std::to_string(bound));
    }
  }

  // (b) a three-sided drain leaves at most one stream unexhausted, at every
  // stopping point.
  for (const size_t n : {size_t{256}, size_t{4096}}) {
    const auto pts = random_points(n, static_cast<int64_t>(2 * n), rng);
    const auto three = ThreeSidedIndex::build(pts);
    for (size_t i = 0; i < kQueries / 2; ++i) {
      QueryRect q = loose_rect(-1, static_cast<int64_t>(2 * n) + 2, rng, 6);
      if (rng() & 1)
        q.y_lo.reset();
      else
        q.y_hi.reset();
      auto it = three.iter(q);
      bool ok = true;
      for (;;) {
        const auto& st = it.stats();
        ok = ok && st.streams_opened >= st.streams_drained &&
             st.streams_opened - st.streams_drained <= 1;
        if (!it.next()) break;
      }
      ok = ok && it.stats().streams_opened == it.stats().streams_drained;
      t.expect(ok, "n=" + std::to_string(n) + " 3sided streams " +
                       describe(q));
    }
  }

  // (c) escalated groups had consumed their full sample budget first. Small
  // groups force escalations so the assertion is exercised, not vacuous.
  {
    const size_t n = 4096;
    const auto pts = random_points(n, static_cast<int64_t>(2 * n), rng);
    FourSidedIndex::Config cfg;
    cfg.group_len = 8;
    const auto four = FourSidedIndex::build(pts, cfg);
    size_t total_escalations = 0;
    for (size_t i = 0; i < kQueries; ++i) {
      const QueryRect q = loose_rect(-1, static_cast<int64_t>(2 * n) + 2,
                                     rng, 6);
      auto it = four.iter(q);
      while (it.next()) {
      }
      const QueryStats& st = it.stats();
      total_escalations += st.escalations;
      t.expect(st.escalations_under_sample_threshold == 0,
               "4sided escalation below sample budget " + describe(q));
    }
    t.expect(total_escalations > 0, "no escalation was ever exercised");
    t.note = "worst successor visit " + std::to_string(worst_nodes) + "; " +
             std::to_string(total_escalations) + " escalations at sample_len " +
             std::to_string(four.sample_len());
  }
  return t;
}

// ---- criterion 4: iterator contracts ----------------------------------------

Tally criterion4() {
  Tally t;
  std::mt19937_64 rng(4004);
  constexpr size_t kQueries = 1000;
  const size_t n = 1024;
  const auto pts = random_grid(n, rng);
  const auto succ = SuccessorIndex::build(pts);
  const auto three = ThreeSidedIndex::build(pts);
  const auto four = FourSidedIndex::build(pts);

  // mutate fixes the query shape once; make may then be reopened on the same
  // rectangle as often as needed.
  const auto check_stream = [&](const char* name, auto mutate, auto make,
                                bool ascending) {
    for (size_t i = 0; i < kQueries; ++i) {
      QueryRect q = loose_rect(0, static_cast<int64_t>(n) + 1, rng, 6);
      mutate(q);
      const auto full = drain(make(q));
      bool mono = true;
      for (size_t j = 1; j < full.size(); ++j)
        mono = mono && (ascending ? full[j].x > full[j - 1].x
                                  : full[j].x < full[j - 1].x);
      t.expect(mono, std::string(name) + " monotonic " + describe(q));
      for (const size_t k : {size_t{1}, size_t{4}, size_t{17}}) {
        auto it = make(q);
        const auto head = online_collect(it, k);
        const size_t len = std::min(k, full.size());
        const bool prefix_ok =
            head.size() == len &&
            std::equal(head.begin(), head.end(), full.begin());
        t.expect(prefix_ok, std::string(name) + " prefix k=" +
                                std::to_string(k) + " " + describe(q));
      }
    }
  };

  const auto keep = [](QueryRect&) {};
  const auto one_y_side = [&](QueryRect& q) {
    if (rng() & 1)
      q.y_lo.reset();
    else
      q.y_hi.reset();
  };
  check_stream("sorted", keep,
               [&](const QueryRect& q) { return succ.sorted(q); }, true);
  check_stream("3sided", one_y_side,
               [&](const QueryRect& q) { return three.iter(q); }, true);
  check_stream("4sided", keep,
               [&](const QueryRect& q) { return four.iter(q); }, true);
  check_stream("maximal", keep,
               [&](const QueryRect& q) { return maximal_points(succ, q); },
               false);
  t.note = "10^3 queries per structure on a rank grid, n=1024";
  return t;
}

// ---- criterion 5: text operations -------------------------------------------

std::vector<uint32_t> stream_positions(SortedIterator it) {
  std::vector<uint32_t> out;
  while (auto p = it.next()) out.push_back(static_cast<uint32_t>(p->x));
  return out;
}

std::vector<uint32_t> naive_suffix_sort(const std::string& text) {
  std::vector<uint32_t> sa(text.size());
  std::iota(sa.begin(), sa.end(), 1);
  std::sort(sa.begin(), sa.end(), [&](uint32_t a, uint32_t b) {
    return text.substr(a - 1) < text.substr(b - 1);
  });
  return sa;
}

Tally criterion5() {
  Tally t;
  std::vector<std::string> patterns;
  for (size_t len = 1; len <= 4; ++len)
    for (uint32_t bits = 0; bits < (1u << len); ++bits) {
      std::string p(len, 'a');
      for (size_t i = 0; i < len; ++i)
        if (bits & (1u << i)) p[i] = 'b';
      patterns.push_back(p);
    }

  for (size_t len = 1; len <= 10; ++len) {
    for (uint32_t bits = 0; bits < (1u << len); ++bits) {
      std::string text(len, 'a');
      for (size_t i = 0; i < len; ++i)
        if (bits & (1u << i)) text[i] = 'b';
      const TextIndex ti = TextIndex::build(text);
      const uint32_t n = static_cast<uint32_t>(len);

      for (const auto& p : patterns) {
        const auto want = naive_occurrences(text, p);
        const auto tag = [&](const char* op) {
          return std::string(op) + " '" + p + "' in '" + text + "'";
        };

        const auto range = ti.pattern_range(p);
        if (want.empty()) {
          t.expect(!range, tag("range"));
        } else if (!range) {
          t.expect(false, tag("range"));
        } else {
          std::vector<uint32_t> hits;
          for (uint32_t r = range->first; r <= range->second; ++r)
            hits.push_back(ti.suffix_array()[r - 1]);
          std::sort(hits.begin(), hits.end());
          t.expect(hits == want, tag("range"));
        }

        t.expect(stream_positions(ti.occurrences(p)) == want, tag("walk"));
        t.expect(stream_positions(ti.occurrences_by_splitting(p)) == want,
                 tag("split"));

        for (uint32_t from = 1; from <= n; ++from) {
          std::optional<uint32_t> expect;
          for (const uint32_t s : want)
            if (s >= from) {
              expect = s;
              break;
            }
          t.expect(ti.first_occurrence(p, from) == expect, tag("next-occ"));
        }

        if (n <= 8) {
          for (uint32_t lo = 1; lo <= n; ++lo)
            for (uint32_t hi = lo; hi <= n; ++hi) {
              std::vector<uint32_t> window;
              for (const uint32_t s : want)
                if (s >= lo && s <= hi) window.push_back(s);
              t.expect(stream_positions(ti.position_restricted(p, lo, hi)) ==
                           window,
                       tag("windowed"));
            }
        } else {
          const std::vector<std::pair<uint32_t, uint32_t>> spans = {
              {1, n},     {2, n - 1}, {1, n / 2},
              {n / 2, n}, {3, 3},     {n - 2, n}};
          for (const auto& [lo, hi] : spans) {
            std::vector<uint32_t> window;
            for (const uint32_t s : want)
              if (s >= lo && s <= hi) window.push_back(s);
            t.expect(
                stream_positions(ti.position_restricted(p, lo, hi)) == window,
                tag("windowed"));
          }
        }

        t.expect(ti.non_overlapping(p) == naive_non_overlapping(text, p),
                 tag("non-overlapping"));

        std::vector<std::vector<std::string>> splits;
        const size_t L = p.size();
        splits.push_back({p});
        for (size_t i = 1; i < L; ++i)
          splits.push_back({p.substr(0, i), p.substr(i)});
        for (size_t i = 1; i < L; ++i)
          for (size_t j = i + 1; j < L; ++j)
            splits.push_back(
                {p.substr(0, i), p.substr(i, j - i), p.substr(j)});
        for (const auto& parts : splits)
          t.expect(ti.leftmost_chain(parts) ==
                       naive_leftmost_chain(text, parts),
                   tag("chain"));
      }
    }
  }

  // Fixture text.
  const TextIndex abra = TextIndex::build("abracadabra");
  t.expect(std::vector<uint32_t>(abra.suffix_array().begin(),
                                 abra.suffix_array().end()) ==
               naive_suffix_sort("abracadabra"),
           "abracadabra suffix array");
  const auto range = abra.pattern_range("abra");
  t.expect(range.has_value() && range->second - range->first + 1 == 2,
           "abracadabra range size");
  if (range) {
    std::vector<uint32_t> hits = {abra.suffix_array()[range->first - 1],
                                  abra.suffix_array()[range->second - 1]};
    std::sort(hits.begin(), hits.end());
    t.expect(hits == std::vector<uint32_t>{1, 8}, "abracadabra positions");
  }
  t.expect(abra.first_occurrence("abra", 2) == 8, "abracadabra next-occ");
  t.expect(abra.non_overlapping("abra") == std::vector<uint32_t>{1, 8},
           "abracadabra non-overlapping");
  const std::vector<std::string> parts = {"ab", "cad"};
  t.expect(abra.leftmost_chain(parts) == std::vector<uint32_t>{1, 5},
           "abracadabra chain");

  t.note = "all binary texts len <= 10, all patterns len <= 4";
  return t;
}

// ---- criterion 6: geometry against the quadratic oracle ---------------------

Tally criterion6() {
  Tally t;
  std::mt19937_64 rng(6006);

  constexpr int64_t kGrid = 6;
  for (int set = 0; set < 500; ++set) {
    const size_t m = 1 + rng() % kGrid;
    const auto pts = grid_subset(m, kGrid, rng);
    const auto succ = SuccessorIndex::build(pts);
    for (int64_t a = 0; a <= kGrid + 1; ++a)
      for (int64_t b = a; b <= kGrid + 1; ++b)
        for (int64_t c = 0; c <= kGrid + 1; ++c)
          for (int64_t d = c; d <= kGrid + 1; ++d) {
            const QueryRect q{a, b, c, d};
            t.expect(drain(maximal_points(succ, q)) == oracle_maximal(pts, q),
                     "set " + std::to_string(set) + " maximal " + describe(q));
          }
    for (int64_t qx = 0; qx <= kGrid + 1; ++qx)
      for (int64_t qy = 0; qy <= kGrid + 1; ++qy)
        t.expect(drain(rectangularly_visible(succ, qx, qy)) ==
                     oracle_visible(pts, qx, qy),
                 "set " + std::to_string(set) + " visible at " +
                     std::to_string(qx) + ":" + std::to_string(qy));
  }

  // Larger instances; query counts sized to the quadratic oracle.
  const std::vector<std::pair<size_t, std::pair<int, int>>> plans = {
      {256, {1000, 300}}, {1024, {300, 100}}, {4096, {100, 30}}};
  for (const auto& [n, counts] : plans) {
    const auto pts = random_grid(n, rng);
    const auto succ = SuccessorIndex::build(pts);
    const int64_t hi = static_cast<int64_t>(n);
    for (int i = 0; i < counts.first; ++i) {
      const QueryRect q = loose_rect(0, hi + 1, rng, 6);
      t.expect(drain(maximal_points(succ, q)) == oracle_maximal(pts, q),
               "n=" + std::to_string(n) + " maximal " + describe(q));
    }
    for (int i = 0; i < counts.second; ++i) {
      std::uniform_int_distribution<int64_t> d(0, hi + 1);
      const int64_t qx = d(rng), qy = d(rng);
      t.expect(drain(rectangularly_visible(succ, qx, qy)) ==
                   oracle_visible(pts, qx, qy),
               "n=" + std::to_string(n) + " visible at " + std::to_string(qx) +
                   ":" + std::to_string(qy));
    }
  }
  t.note = "tiny sweep plus calibrated large grids";
  return t;
}

// ---- criterion 7: serialization round trips ----------------------------------

Tally criterion7() {
  Tally t;
  std::mt19937_64 rng(7007);
  const size_t n = 4096;
  const int64_t hi = static_cast<int64_t>(2 * n) + 2;
  constexpr int kQueries = 200;

  const auto round_trip = [](const IndexFile& file) {
    std::stringstream buf;
    save_index(buf, file);
    return load_index(buf);
  };

  {
    const auto pts = random_points(n, 2 * static_cast<int64_t>(n), rng);
    IndexFile file;
    file.kind = IndexKind::kSuccessor;
    file.points = pts;
    const auto loaded = round_trip(file);
    const auto before = SuccessorIndex::build(pts);
    const auto after = SuccessorIndex::build(loaded.points, loaded.stride);
    std::uniform_int_distribution<int64_t> dv(-1, hi);
    for (int i = 0; i < kQueries; ++i) {
      const int64_t a = dv(rng);
      int64_t c = dv(rng), d = dv(rng);
      if (c > d) std::swap(c, d);
      t.expect(before.successor(a, c, d) == after.successor(a, c, d),
               "succ round trip");
      const QueryRect q = loose_rect(-1, hi, rng, 5);
      t.expect(drain(before.sorted(q)) == drain(after.sorted(q)),
               "sorted round trip " + describe(q));
    }
  }
  {
    const auto pts = random_points(n, 2 * static_cast<int64_t>(n), rng);
    IndexFile file;
    file.kind = IndexKind::kThreeSided;
    file.points = pts;
    const auto loaded = round_trip(file);
    const auto before = ThreeSidedIndex::build(pts);
    const auto after = ThreeSidedIndex::build(loaded.points);
    for (int i = 0; i < kQueries; ++i) {
      QueryRect q = loose_rect(-1, hi, rng, 6);
      if (rng() & 1)
        q.y_lo.reset();
      else
        q.y_hi.reset();
      t.expect(drain(before.iter(q)) == drain(after.iter(q)),
               "3sided round trip " + describe(q));
    }
  }
  {
    const auto pts = random_points(n, 2 * static_cast<int64_t>(n), rng);
    IndexFile file;
    file.kind = IndexKind::kFourSided;
    file.group_len = 16;
    file.sample_len = 2;
    file.points = pts;
    const auto loaded = round_trip(file);
    FourSidedIndex::Config cfg;
    cfg.group_len = loaded.group_len;
    cfg.sample_len = loaded.sample_len;
    FourSidedIndex::Config direct;
    direct.group_len = 16;
    direct.sample_len = 2;
    const auto before = FourSidedIndex::build(pts, direct);
    const auto after = FourSidedIndex::build(loaded.points, cfg);
    t.expect(loaded.group_len == 16 && loaded.sample_len == 2,
             "4sided knobs survive the file");
    for (int i = 0; i < kQueries; ++i) {
      const QueryRect q = loose_rect(-1, hi, rng, 6);
      t.expect(drain(before.iter(q)) == drain(after.iter(q)),
               "4sided round trip " + describe(q));
    }
  }
  {
    std::string text(n, 'a');
    for (auto& ch : text) ch = static_cast<char>('a' + rng() % 3);
    IndexFile file;
    file.kind = IndexKind::kText;
    file.text = text;
    const auto loaded = round_trip(file);
    const auto before = TextIndex::build(text);
    const auto after = TextIndex::build(loaded.text);
    std::uniform_int_distribution<uint32_t> dpos(1, static_cast<uint32_t>(n));
    for (int i = 0; i < kQueries; ++i) {
      const uint32_t start = dpos(rng);
      const uint32_t len =
          std::min<uint32_t>(1 + rng() % 5, static_cast<uint32_t>(n) - start + 1);
      const std::string p = text.substr(start - 1, len);
      t.expect(stream_positions(before.occurrences(p)) ==
                   stream_positions(after.occurrences(p)),
               "text round trip '" + p + "'");
      t.expect(before.non_overlapping(p) == after.non_overlapping(p),
               "text chain round trip '" + p + "'");
      t.expect(before.first_occurrence(p, start) ==
                   after.first_occurrence(p, start),
               "text next-occ round trip '" + p + "'");
    }
  }
  t.note = "n=4096 fixture per structure";
  return t;
}

template <typename F>
int report(int id, const std::string& name, double target_secs, F fn) {
  const auto t0 = Clock::now();
  Tally t = fn();
  const double secs = secs_since(t0);
  bool pass = t.failures == 0;
  std::string overrun;
  if (target_secs > 0 && secs > target_secs) {
    pass = false;
    overrun = " exceeded " + std::to_string(static_cast<int>(target_secs)) +
              "s target";
  }
  std::cout << "criterion " << id << " (" << name << "): "
            << (pass ? "PASS" : "FAIL") << " [" << std::fixed
            << std::setprecision(1) << secs << "s] ";
  if (t.failures > 0)
    std::cout << t.failures << " of " << t.checks << " checks failed; first: "
              << t.first;
  else
    std::cout << t.note << overrun;
  std::cout << "\n" << std::flush;
  return pass ? 0 : 1;
}

}  // namespace

int main() {
  int failed = 0;
  failed += report(1, "exhaustive oracle sweep", 60, criterion1);
  failed += report(2, "randomized oracle equality", 300, criterion2);
  failed += report(3, "probe shapes", 0, criterion3);
  failed += report(4, "iterator contracts", 0, criterion4);
  failed += report(5, "text operations", 120, criterion5);
  failed += report(6, "geometry walks", 0, criterion6);
  failed += report(7, "serialization round trips", 0, criterion7);
  if (failed > 0)
    std::cout << failed << " criterion(s) failed\n";
  else
    std::cout << "all 7 criteria passed\n";
  return failed;
}
