#include "srr/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "srr/four_sided.hpp"
#include "srr/geometry.hpp"
#include "srr/io.hpp"
#include "srr/points.hpp"
#include "srr/serialize.hpp"
#include "srr/stream.hpp"
#include "srr/successor.hpp"
#include "srr/text_index.hpp"
#include "srr/three_sided.hpp"

namespace srr {
namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kMismatch = 2;
constexpr int kIo = 3;

double elapsed_us(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::micro>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int64_t parse_int_arg(std::string_view field, const char* flag) {
  int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw std::invalid_argument(std::string(flag) +
                                ": expected integer, got '" +
                                std::string(field) + "'");
  return value;
}

// One loaded index file with its structure rebuilt from the stored inputs.
struct LoadedIndex {
  IndexFile file;
  std::optional<SuccessorIndex> succ;
  std::optional<ThreeSidedIndex> three;
  std::optional<FourSidedIndex> four;
  std::optional<TextIndex> text;

  size_t structure_bytes() const {
    if (succ) return succ->memory_bytes();
    if (three) return three->memory_bytes();
    if (four) return four->memory_bytes();
    if (text) return text->memory_bytes();
    return 0;
  }
};

void warn_memory_budget(size_t bytes) {
  const char* env = std::getenv("SRR_MEMORY_BUDGET_MB");
  if (!env) return;
  char* end = nullptr;
  const double budget_mb = std::strtod(env, &end);
  if (end == env || budget_mb <= 0) return;
  const double used_mb = static_cast<double>(bytes) / (1024.0 * 1024.0);
  if (used_mb > budget_mb)
    std::cerr << "warning: structure uses " << used_mb
              << " MiB, over SRR_MEMORY_BUDGET_MB=" << budget_mb << "\n";
}

LoadedIndex build_from_file(IndexFile file) {
  LoadedIndex ix;
  switch (file.kind) {
    case IndexKind::kSuccessor:
      ix.succ = SuccessorIndex::build(file.points, file.stride);
      break;
    case IndexKind::kThreeSided:
      ix.three = ThreeSidedIndex::build(file.points);
      break;
    case IndexKind::kFourSided: {
      FourSidedIndex::Config cfg;
      cfg.group_len = file.group_len;
      cfg.sample_len = file.sample_len;
      ix.four = FourSidedIndex::build(file.points, cfg);
      break;
    }
    case IndexKind::kText:
      ix.text = TextIndex::build(file.text);
      break;
  }
  ix.file = std::move(file);
  warn_memory_budget(ix.structure_bytes());
  return ix;
}

// ---- query families ------------------------------------------------------

enum class Family {
  kSucc,
  kSorted,
  kThreeSided,
  kMaximal,
  kVisible,
  kFind,
  kDontCare,
  kNonOverlap,
  kPosFind,
};

const std::vector<std::pair<std::string, Family>> kFamilies = {
    {"succ", Family::kSucc},         {"sorted", Family::kSorted},
    {"3sided", Family::kThreeSided}, {"maximal", Family::kMaximal},
    {"visible", Family::kVisible},   {"find", Family::kFind},
    {"dontcare", Family::kDontCare}, {"nonoverlap", Family::kNonOverlap},
    {"posfind", Family::kPosFind},
};

std::optional<Family> family_from_string(const std::string& name) {
  for (const auto& [s, f] : kFamilies)
    if (s == name) return f;
  return std::nullopt;
}

bool family_matches_kind(Family f, IndexKind kind) {
  switch (f) {
    case Family::kSucc:
    case Family::kMaximal:
    case Family::kVisible:
      return kind == IndexKind::kSuccessor;
    case Family::kSorted:
      return kind == IndexKind::kSuccessor || kind == IndexKind::kFourSided;
    case Family::kThreeSided:
      return kind == IndexKind::kThreeSided;
    case Family::kFind:
    case Family::kDontCare:
    case Family::kNonOverlap:
    case Family::kPosFind:
      return kind == IndexKind::kText;
  }
  return false;
}

// ---- output --------------------------------------------------------------

json stats_to_json(const QueryStats& s) {
  return json{{"nodes", s.probes.nodes_visited},
              {"rmq", s.probes.rmq_probes},
              {"pred", s.probes.pred_probes},
              {"decoded", s.probes.points_decoded},
              {"hops", s.probes.decode_hops},
              {"stored", s.probes.stored_reads},
              {"opened", s.streams_opened},
              {"drained", s.streams_drained},
              {"escalations", s.escalations},
              {"under_threshold", s.escalations_under_sample_threshold}};
}

struct Emitter {
  bool json_lines = false;
  size_t seq = 0;

  void point(const Point& p) {
    if (json_lines)
      std::cout << json{{"seq", seq}, {"x", p.x}, {"y", p.y}, {"id", p.id}}
                << "\n";
    else
      std::cout << p.x << "\t" << p.y << "\t" << p.id << "\n";
    ++seq;
  }
  void position(uint32_t pos) {
    if (json_lines)
      std::cout << json{{"seq", seq}, {"pos", pos}} << "\n";
    else
      std::cout << pos << "\n";
    ++seq;
  }
  void absent() {
    if (json_lines)
      std::cout << json{{"seq", seq}, {"absent", true}} << "\n";
    else
      std::cout << "absent\n";
    ++seq;
  }
  void summary(size_t count, const QueryStats* stats) {
    if (json_lines) {
      json rec{{"count", count}};
      if (stats) rec["probes"] = stats_to_json(*stats);
      std::cout << rec << "\n";
      return;
    }
    std::cout << "count=" << count << "\n";
    if (stats) {
      const json j = stats_to_json(*stats);
      std::cout << "probes:";
      for (const auto& [k, v] : j.items()) std::cout << " " << k << "=" << v;
      std::cout << "\n";
    }
  }
};

// ---- per-family execution -------------------------------------------------

struct QueryArgs {
  Family family = Family::kSucc;
  QueryRect rect;
  std::string pattern;
  std::optional<int64_t> at_x, at_y;
  std::optional<uint32_t> window_lo, window_hi;
  std::optional<size_t> k;
  std::string algo = "walk";
};

struct QueryOutcome {
  std::vector<Point> points;      // point-shaped results
  std::vector<uint32_t> numbers;  // position-shaped results
  bool point_shaped = true;
  bool absent = false;            // chain queries: no embedding at all
  bool has_stats = false;
  QueryStats stats;
};

QueryOutcome run_family(const LoadedIndex& ix, const QueryArgs& args) {
  QueryOutcome out;
  auto drain = [&](SortedIterator it) {
    out.points =
        online_collect(it, args.k.value_or(std::numeric_limits<size_t>::max()));
    out.stats = it.stats();
    out.has_stats = true;
  };
  // Occurrence streams answer in text positions; the suffix ranks riding
  // along as y are plumbing, not output.
  auto drain_positions = [&](SortedIterator it) {
    drain(std::move(it));
    out.numbers.reserve(out.points.size());
    for (const Point& p : out.points)
      out.numbers.push_back(static_cast<uint32_t>(p.x));
    out.points.clear();
    out.point_shaped = false;
  };

  switch (args.family) {
    case Family::kSucc: {
      if (args.rect.x_hi)
        throw std::invalid_argument(
            "succ takes a rectangle unbounded on the high x side");
      auto it = ix.succ->sorted(args.rect);
      out.points = online_collect(it, 1);
      out.stats = it.stats();
      out.has_stats = true;
      break;
    }
    case Family::kSorted:
      drain(ix.succ ? ix.succ->sorted(args.rect) : ix.four->iter(args.rect));
      break;
    case Family::kThreeSided:
      drain(ix.three->iter(args.rect));
      break;
    case Family::kMaximal:
      drain(maximal_points(*ix.succ, args.rect));
      break;
    case Family::kVisible:
      drain(rectangularly_visible(*ix.succ, *args.at_x, *args.at_y));
      break;
    case Family::kFind:
      drain_positions(args.algo == "split"
                          ? ix.text->occurrences_by_splitting(args.pattern)
                          : ix.text->occurrences(args.pattern));
      break;
    case Family::kPosFind:
      drain_positions(ix.text->position_restricted(
          args.pattern, *args.window_lo, *args.window_hi));
      break;
    case Family::kNonOverlap:
      out.numbers = ix.text->non_overlapping(args.pattern);
      out.point_shaped = false;
      break;
    case Family::kDontCare: {
      const auto chain = ix.text->leftmost_chain(split_pattern(args.pattern));
      if (chain)
        out.numbers = *chain;
      else
        out.absent = true;
      out.point_shaped = false;
      break;
    }
  }
  return out;
}

// Reference answer recomputed from the inputs stored in the index file.
QueryOutcome run_oracle(const LoadedIndex& ix, const QueryArgs& args) {
  QueryOutcome out;
  const auto cap = [&](std::vector<Point> v) {
    if (args.k && v.size() > *args.k) v.resize(*args.k);
    return v;
  };
  const auto cap_nums = [&](std::vector<uint32_t> v) {
    if (args.k && v.size() > *args.k) v.resize(*args.k);
    return v;
  };
  const std::vector<Point>& pts = ix.file.points;
  switch (args.family) {
    case Family::kSucc: {
      const auto p = oracle_successor(pts, args.rect);
      if (p) out.points.push_back(*p);
      break;
    }
    case Family::kSorted:
    case Family::kThreeSided:
      out.points = cap(oracle_report_sorted(pts, args.rect));
      break;
    case Family::kMaximal:
      out.points = cap(oracle_maximal(pts, args.rect));
      break;
    case Family::kVisible:
      out.points = cap(oracle_visible(pts, *args.at_x, *args.at_y));
      break;
    case Family::kFind:
      out.numbers = cap_nums(naive_occurrences(ix.file.text, args.pattern));
      out.point_shaped = false;
      break;
    case Family::kPosFind: {
      std::vector<uint32_t> hits;
      for (const uint32_t s : naive_occurrences(ix.file.text, args.pattern))
        if (s >= *args.window_lo && s <= *args.window_hi) hits.push_back(s);
      out.numbers = cap_nums(std::move(hits));
      out.point_shaped = false;
      break;
    }
    case Family::kNonOverlap:
      out.numbers = naive_non_overlapping(ix.file.text, args.pattern);
      out.point_shaped = false;
      break;
    case Family::kDontCare: {
      const auto chain =
          naive_leftmost_chain(ix.file.text, split_pattern(args.pattern));
      if (chain)
        out.numbers = *chain;
      else
        out.absent = true;
      out.point_shaped = false;
      break;
    }
  }
  return out;
}

// Occurrence streams carry positions in x; flatten for comparisons.
std::vector<uint32_t> positions_of(const QueryOutcome& o) {
  if (!o.point_shaped) return o.numbers;
  std::vector<uint32_t> v;
  v.reserve(o.points.size());
  for (const Point& p : o.points) v.push_back(static_cast<uint32_t>(p.x));
  return v;
}

bool outcomes_equal(Family f, const QueryOutcome& got,
                    const QueryOutcome& want) {
  const bool text_family = f == Family::kFind || f == Family::kPosFind ||
                           f == Family::kNonOverlap || f == Family::kDontCare;
  if (text_family)
    return got.absent == want.absent &&
           positions_of(got) == positions_of(want);
  return got.points == want.points;
}

// ---- subcommands -----------------------------------------------------------

int cmd_build(const std::string& input, const std::string& kind_name,
              const std::string& out_path, uint32_t stride, uint32_t group_len,
              uint32_t sample_len, bool json_lines) {
  const auto kind = kind_from_string(kind_name);
  if (!kind) throw std::invalid_argument("unknown kind: " + kind_name);
  IndexFile file;
  file.kind = *kind;
  file.stride = stride;
  file.group_len = group_len;
  file.sample_len = sample_len;

  const auto t0 = std::chrono::steady_clock::now();
  LoadedIndex ix;
  try {
    if (*kind == IndexKind::kText)
      file.text = read_text_file(input);
    else
      file.points = read_points_file(input);
    ix = build_from_file(std::move(file));
  } catch (const std::invalid_argument& e) {
    // Rejections here come from the input data, not the command line.
    throw std::runtime_error(std::string("input: ") + e.what());
  }
  const double us = elapsed_us(t0);
  save_index_file(out_path, ix.file);

  const size_t n = ix.file.kind == IndexKind::kText ? ix.file.text.size()
                                                    : ix.file.points.size();
  if (json_lines) {
    std::cout << json{{"kind", to_string(ix.file.kind)},
                      {"n", n},
                      {"build_us", us},
                      {"bytes", ix.structure_bytes()},
                      {"out", out_path}}
              << "\n";
  } else {
    std::cout << "kind=" << to_string(ix.file.kind) << " n=" << n
              << " build_us=" << us << " bytes=" << ix.structure_bytes()
              << " out=" << out_path << "\n";
  }
  return kOk;
}

int cmd_query(const std::string& index_path, const QueryArgs& args,
              bool verify, bool probes, bool json_lines) {
  LoadedIndex ix = build_from_file(load_index_file(index_path));
  if (!family_matches_kind(args.family, ix.file.kind))
    throw std::invalid_argument("family does not match index kind '" +
                                to_string(ix.file.kind) + "'");
  const QueryOutcome got = run_family(ix, args);

  Emitter em{json_lines};
  if (got.point_shaped) {
    if (got.points.empty() && args.family == Family::kSucc)
      em.absent();
    else
      for (const Point& p : got.points) em.point(p);
    em.summary(got.points.size(), probes && got.has_stats ? &got.stats : nullptr);
  } else {
    if (got.absent) em.absent();
    for (const uint32_t pos : got.numbers) em.position(pos);
    em.summary(got.numbers.size(),
               probes && got.has_stats ? &got.stats : nullptr);
  }

  if (!verify) return kOk;
  const QueryOutcome want = run_oracle(ix, args);
  if (outcomes_equal(args.family, got, want)) {
    std::cerr << "verify: ok\n";
    return kOk;
  }
  std::cerr << "verify: MISMATCH (structure "
            << (got.point_shaped ? got.points.size() : got.numbers.size())
            << " results, oracle "
            << (want.point_shaped ? want.points.size() : want.numbers.size())
            << ")\n";
  return kMismatch;
}

// ---- bench -----------------------------------------------------------------

struct BenchSample {
  double micros = 0;
  size_t results = 0;
  QueryStats stats;
};

QueryArgs random_query(Family family, const LoadedIndex& ix,
                       std::mt19937_64& rng, std::optional<size_t> k) {
  QueryArgs args;
  args.family = family;
  args.k = k;
  const auto& pts = ix.file.points;
  if (!pts.empty()) {
    int64_t xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const Point& p : pts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    std::uniform_int_distribution<int64_t> dx(xmin - 1, xmax + 1);
    std::uniform_int_distribution<int64_t> dy(ymin - 1, ymax + 1);
    auto ordered = [](int64_t a, int64_t b) {
      return a <= b ? std::pair(a, b) : std::pair(b, a);
    };
    const auto [xl, xh] = ordered(dx(rng), dx(rng));
    const auto [yl, yh] = ordered(dy(rng), dy(rng));
    switch (family) {
      case Family::kSucc:
        args.rect = QueryRect{xl, std::nullopt, yl, yh};
        break;
      case Family::kThreeSided:
        if (rng() & 1)
          args.rect = QueryRect{xl, xh, std::nullopt, yh};
        else
          args.rect = QueryRect{xl, xh, yl, std::nullopt};
        break;
      case Family::kVisible:
        args.at_x = xh;
        args.at_y = yh;
        break;
      default:
        args.rect = QueryRect{xl, xh, yl, yh};
        break;
    }
    return args;
  }
  const auto& text = ix.file.text;
  const uint32_t n = static_cast<uint32_t>(text.size());
  std::uniform_int_distribution<uint32_t> dpos(1, n);
  std::uniform_int_distribution<uint32_t> dlen(1, 6);
  const uint32_t start = dpos(rng);
  const uint32_t len = std::min<uint32_t>(dlen(rng), n - start + 1);
  args.pattern = text.substr(start - 1, len);
  if (family == Family::kDontCare && args.pattern.size() >= 2) {
    std::uniform_int_distribution<size_t> dat(0, args.pattern.size() - 1);
    args.pattern[dat(rng)] = '*';
  }
  if (family == Family::kPosFind) {
    uint32_t lo = dpos(rng), hi = dpos(rng);
    if (lo > hi) std::swap(lo, hi);
    args.window_lo = lo;
    args.window_hi = hi;
  }
  return args;
}

int cmd_bench(const std::string& index_path, const std::string& family_name,
              size_t queries, uint64_t seed, std::optional<size_t> k,
              bool json_lines) {
  const auto family = family_from_string(family_name);
  if (!family) throw std::invalid_argument("unknown family: " + family_name);
  LoadedIndex ix = build_from_file(load_index_file(index_path));
  if (!family_matches_kind(*family, ix.file.kind))
    throw std::invalid_argument("family does not match index kind '" +
                                to_string(ix.file.kind) + "'");

  std::mt19937_64 rng(seed);
  std::vector<BenchSample> samples;
  samples.reserve(queries);
  for (size_t i = 0; i < queries; ++i) {
    const QueryArgs args = random_query(*family, ix, rng, k);
    const auto t0 = std::chrono::steady_clock::now();
    const QueryOutcome out = run_family(ix, args);
    BenchSample s;
    s.micros = elapsed_us(t0);
    s.results =
        out.point_shaped ? out.points.size() : out.numbers.size();
    if (out.has_stats) s.stats = out.stats;
    if (json_lines)
      std::cout << json{{"seq", i},
                        {"micros", s.micros},
                        {"results", s.results},
                        {"probes", stats_to_json(s.stats)}}
                << "\n";
    samples.push_back(s);
  }

  const auto agg = [&](auto extract) {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(double(extract(s)));
    double mean = 0;
    for (double x : v) mean += x;
    if (!v.empty()) mean /= double(v.size());
    std::sort(v.begin(), v.end());
    const double p99 =
        v.empty() ? 0 : v[static_cast<size_t>(std::ceil(0.99 * double(v.size() - 1)))];
    return std::pair(mean, p99);
  };
  const auto [mean_us, p99_us] = agg([](const BenchSample& s) { return s.micros; });
  const auto [mean_res, p99_res] =
      agg([](const BenchSample& s) { return s.results; });
  const auto [mean_nodes, p99_nodes] =
      agg([](const BenchSample& s) { return s.stats.probes.nodes_visited; });
  const auto [mean_rmq, p99_rmq] =
      agg([](const BenchSample& s) { return s.stats.probes.rmq_probes; });
  const auto [mean_pred, p99_pred] =
      agg([](const BenchSample& s) { return s.stats.probes.pred_probes; });
  const auto [mean_dec, p99_dec] =
      agg([](const BenchSample& s) { return s.stats.probes.points_decoded; });
  const json summary{
      {"family", family_name},
      {"queries", queries},
      {"seed", seed},
      {"micros", {{"mean", mean_us}, {"p99", p99_us}}},
      {"results", {{"mean", mean_res}, {"p99", p99_res}}},
      {"nodes", {{"mean", mean_nodes}, {"p99", p99_nodes}}},
      {"rmq", {{"mean", mean_rmq}, {"p99", p99_rmq}}},
      {"pred", {{"mean", mean_pred}, {"p99", p99_pred}}},
      {"decoded", {{"mean", mean_dec}, {"p99", p99_dec}}},
  };
  std::cout << summary << "\n";
  return kOk;
}

// ---- selftest --------------------------------------------------------------

struct SelfTest {
  size_t failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

std::vector<Point> random_points(size_t n, int64_t coord_max,
                                 std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> d(1, coord_max);
  std::vector<Point> pts(n);
  for (size_t i = 0; i < n; ++i)
    pts[i] = Point{d(rng), d(rng), static_cast<uint32_t>(i)};
  return pts;
}

std::vector<Point> random_permutation_points(size_t n, std::mt19937_64& rng) {
  std::vector<int64_t> xs(n), ys(n);
  for (size_t i = 0; i < n; ++i) xs[i] = ys[i] = static_cast<int64_t>(i) + 1;
  std::shuffle(xs.begin(), xs.end(), rng);
  std::shuffle(ys.begin(), ys.end(), rng);
  std::vector<Point> pts(n);
  for (size_t i = 0; i < n; ++i)
    pts[i] = Point{xs[i], ys[i], static_cast<uint32_t>(i)};
  return pts;
}

int cmd_selftest(size_t n, size_t queries, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SelfTest st;

  const auto pts = random_points(n, static_cast<int64_t>(n), rng);
  const auto grid = random_permutation_points(n, rng);
  const auto succ = SuccessorIndex::build(pts);
  const auto succ_grid = SuccessorIndex::build(grid);
  const auto three = ThreeSidedIndex::build(pts);
  const auto four = FourSidedIndex::build(pts);

  std::uniform_int_distribution<int64_t> dc(0, static_cast<int64_t>(n) + 1);
  auto ordered = [](int64_t a, int64_t b) {
    return a <= b ? std::pair(a, b) : std::pair(b, a);
  };

  size_t bad_succ = 0, bad_sorted = 0, bad_three = 0, bad_four = 0,
         bad_max = 0, bad_vis = 0;
  for (size_t i = 0; i < queries; ++i) {
    const auto [xl, xh] = ordered(dc(rng), dc(rng));
    const auto [yl, yh] = ordered(dc(rng), dc(rng));
    const QueryRect rect{xl, xh, yl, yh};
    const QueryRect open_x{xl, std::nullopt, yl, yh};

    auto walk = succ.sorted(open_x);
    const auto first = online_collect(walk, 1);
    const auto want_first = oracle_successor(pts, open_x);
    if ((first.empty() && want_first) ||
        (!first.empty() && (!want_first || first[0] != *want_first)))
      ++bad_succ;

    auto sorted_it = succ.sorted(rect);
    if (online_collect(sorted_it, n + 1) != oracle_report_sorted(pts, rect))
      ++bad_sorted;

    const QueryRect three_q = (rng() & 1)
                                  ? QueryRect{xl, xh, std::nullopt, yh}
                                  : QueryRect{xl, xh, yl, std::nullopt};
    auto three_it = three.iter(three_q);
    if (online_collect(three_it, n + 1) != oracle_report_sorted(pts, three_q))
      ++bad_three;

    auto four_it = four.iter(rect);
    if (online_collect(four_it, n + 1) != oracle_report_sorted(pts, rect))
      ++bad_four;

    auto max_it = maximal_points(succ_grid, rect);
    if (online_collect(max_it, n + 1) != oracle_maximal(grid, rect))
      ++bad_max;

    auto vis_it = rectangularly_visible(succ_grid, xh, yh);
    if (online_collect(vis_it, n + 1) != oracle_visible(grid, xh, yh))
      ++bad_vis;
  }
  const auto fmt = [&](size_t bad) {
    return std::to_string(bad) + "/" + std::to_string(queries) + " mismatched";
  };
  st.check("points.successor", bad_succ == 0, fmt(bad_succ));
  st.check("points.sorted-walk", bad_sorted == 0, fmt(bad_sorted));
  st.check("points.three-sided", bad_three == 0, fmt(bad_three));
  st.check("points.four-sided", bad_four == 0, fmt(bad_four));
  st.check("points.maximal", bad_max == 0, fmt(bad_max));
  st.check("points.visible", bad_vis == 0, fmt(bad_vis));

  std::string text(std::max<size_t>(n, 16), 'a');
  std::uniform_int_distribution<int> dab(0, 1);
  for (auto& ch : text) ch = dab(rng) ? 'b' : 'a';
  const auto tix = TextIndex::build(text);
  std::uniform_int_distribution<size_t> dpos(0, text.size() - 1);
  const auto xs_of = [](const std::vector<Point>& v) {
    std::vector<uint32_t> out;
    out.reserve(v.size());
    for (const Point& p : v) out.push_back(static_cast<uint32_t>(p.x));
    return out;
  };
  size_t bad_find = 0, bad_split = 0, bad_non = 0, bad_dc = 0;
  for (size_t i = 0; i < queries; ++i) {
    const size_t start = dpos(rng);
    const size_t len = 1 + (rng() % std::min<size_t>(4, text.size() - start));
    const std::string pat = text.substr(start, len);
    const auto want = naive_occurrences(text, pat);

    auto it = tix.occurrences(pat);
    if (xs_of(online_collect(it, text.size())) != want) ++bad_find;
    auto it2 = tix.occurrences_by_splitting(pat);
    if (xs_of(online_collect(it2, text.size())) != want) ++bad_split;
    if (tix.non_overlapping(pat) != naive_non_overlapping(text, pat)) ++bad_non;

    std::string dc_pat = pat;
    dc_pat[rng() % dc_pat.size()] = '*';
    const auto parts = split_pattern(dc_pat);
    if (!parts.empty() &&
        tix.leftmost_chain(parts) != naive_leftmost_chain(text, parts))
      ++bad_dc;
  }
  st.check("text.find", bad_find == 0, fmt(bad_find));
  st.check("text.find-splitting", bad_split == 0, fmt(bad_split));
  st.check("text.non-overlapping", bad_non == 0, fmt(bad_non));
  st.check("text.chain", bad_dc == 0, fmt(bad_dc));

  if (st.failures > 0) {
    std::cout << st.failures << " selftest group(s) failed\n";
    return kMismatch;
  }
  std::cout << "selftest ok\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"sorted orthogonal range reporting toolkit"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "read input, build, persist");
  std::string in_path, kind_name, out_path;
  uint32_t stride = 0, group_len = 0, sample_len = 0;
  bool build_json = false;
  build->add_option("--input", in_path, "points or text file")->required();
  build->add_option("--kind", kind_name, "succ | 3sided | sorted | text")
      ->required();
  build->add_option("--out", out_path, "index file to write")->required();
  build->add_option("--stride", stride, "stored-level stride (succ)");
  build->add_option("--group-len", group_len, "group length (sorted)");
  build->add_option("--sample-len", sample_len, "samples per group (sorted)");
  build->add_flag("--json", build_json, "json-lines output");

  // query
  auto* query = app.add_subcommand("query", "run one query against an index");
  std::string q_index, q_family, q_rect, q_pattern, q_at, q_window, q_algo =
      "walk";
  int64_t q_k = -1;
  bool q_verify = false, q_probes = false, q_json = false;
  query->add_option("--index", q_index, "index file")->required();
  query->add_option("--family", q_family,
                    "succ|sorted|3sided|maximal|visible|find|dontcare|"
                    "nonoverlap|posfind")
      ->required();
  query->add_option("--rect", q_rect, "xlo:xhi:ylo:yhi, empty = unbounded");
  query->add_option("--pattern", q_pattern, "pattern (text families)");
  query->add_option("--at", q_at, "qx:qy (visible)");
  query->add_option("--window", q_window, "lo:hi (posfind)");
  query->add_option("-k", q_k, "emit at most k results");
  query->add_option("--algo", q_algo, "find algorithm: walk | split");
  query->add_flag("--verify", q_verify, "re-check against embedded oracle");
  query->add_flag("--probes", q_probes, "print probe counters");
  query->add_flag("--json", q_json, "json-lines output");

  // bench
  auto* bench = app.add_subcommand("bench", "timed randomized workload");
  std::string b_index, b_family;
  size_t b_queries = 1000;
  uint64_t b_seed = 42;
  int64_t b_k = -1;
  bool b_json = false;
  bench->add_option("--index", b_index, "index file")->required();
  bench->add_option("--family", b_family, "query family")->required();
  bench->add_option("--queries", b_queries, "number of queries");
  bench->add_option("--seed", b_seed, "workload seed");
  bench->add_option("-k", b_k, "emit at most k results per query");
  bench->add_flag("--json", b_json, "per-query json-lines records");

  // selftest
  auto* self = app.add_subcommand("selftest", "oracle cross-check on random data");
  size_t s_n = 256, s_queries = 200;
  uint64_t s_seed = 7;
  self->add_option("--n", s_n, "point count / text length");
  self->add_option("--queries", s_queries, "queries per family");
  self->add_option("--seed", s_seed, "data seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (build->parsed())
      return cmd_build(in_path, kind_name, out_path, stride, group_len,
                       sample_len, build_json);
    if (query->parsed()) {
      QueryArgs args;
      const auto family = family_from_string(q_family);
      if (!family) throw std::invalid_argument("unknown family: " + q_family);
      args.family = *family;
      if (!q_rect.empty()) args.rect = parse_rect(q_rect);
      args.pattern = q_pattern;
      args.algo = q_algo;
      if (q_k >= 0) args.k = static_cast<size_t>(q_k);
      if (args.family == Family::kVisible) {
        if (q_at.empty())
          throw std::invalid_argument("visible requires --at qx:qy");
        const auto colon = q_at.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("--at must be qx:qy");
        args.at_x = parse_int_arg(q_at.substr(0, colon), "--at");
        args.at_y = parse_int_arg(q_at.substr(colon + 1), "--at");
      }
      if (args.family == Family::kPosFind) {
        if (q_window.empty())
          throw std::invalid_argument("posfind requires --window lo:hi");
        const auto colon = q_window.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("--window must be lo:hi");
        const int64_t lo = parse_int_arg(q_window.substr(0, colon), "--window");
        const int64_t hi =
            parse_int_arg(q_window.substr(colon + 1), "--window");
        if (lo < 0 || hi < 0 ||
            lo > std::numeric_limits<uint32_t>::max() ||
            hi > std::numeric_limits<uint32_t>::max())
          throw std::invalid_argument("--window: position out of range");
        args.window_lo = static_cast<uint32_t>(lo);
        args.window_hi = static_cast<uint32_t>(hi);
      }
      return cmd_query(q_index, args, q_verify, q_probes, q_json);
    }
    if (bench->parsed())
      return cmd_bench(b_index, b_family, b_queries, b_seed,
                       b_k >= 0 ? std::optional<size_t>(b_k) : std::nullopt,
                       b_json);
    if (self->parsed()) return cmd_selftest(s_n, s_queries, s_seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

}  // namespace srr
