#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;

  std::vector<std::string> out_lines() const {
    std::vector<std::string> lines;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
  }
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "srr_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Runs the installed binary through the shell, capturing both streams.
RunResult run(const std::string& args, const std::string& env = "") {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string(SRR_CLI_BIN) + " " + args + " > " + out.string() +
         " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  REQUIRE(rc != -1);
  if (WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

struct Fixture {
  fs::path pts_file = work_dir() / "pts.txt";
  fs::path grid_file = work_dir() / "grid.txt";
  fs::path text_file = work_dir() / "text.txt";
  fs::path succ_idx = work_dir() / "succ.bin";
  fs::path grid_idx = work_dir() / "grid.bin";
  fs::path three_idx = work_dir() / "three.bin";
  fs::path four_idx = work_dir() / "four.bin";
  fs::path text_idx = work_dir() / "text.bin";

  Fixture() {
    spit(pts_file,
         "# demo points\n1 5\n2 3\n2 9\n5 1\n7 7\n9 4\n");
    spit(grid_file, "1 3\n2 1\n3 2\n");
    spit(text_file, "abracadabra\n");
    REQUIRE(run("build --input " + pts_file.string() +
                " --kind succ --out " + succ_idx.string())
                .code == 0);
    REQUIRE(run("build --input " + grid_file.string() +
                " --kind succ --out " + grid_idx.string())
                .code == 0);
    REQUIRE(run("build --input " + pts_file.string() +
                " --kind 3sided --out " + three_idx.string())
                .code == 0);
    REQUIRE(run("build --input " + pts_file.string() +
                " --kind sorted --out " + four_idx.string())
                .code == 0);
    REQUIRE(run("build --input " + text_file.string() +
                " --kind text --out " + text_idx.string())
                .code == 0);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_CASE("build reports the persisted index") {
  const auto& f = fixture();
  const auto r = run("build --input " + f.pts_file.string() +
                     " --kind succ --out " + f.succ_idx.string() + " --json");
  REQUIRE(r.code == 0);
  const json rec = json::parse(r.out);
  CHECK(rec["kind"] == "succ");
  CHECK(rec["n"] == 6);
  CHECK(rec["bytes"].get<size_t>() > 0);
  CHECK(fs::file_size(f.succ_idx) > 0);
}

TEST_CASE("sorted reporting query emits points in x order") {
  const auto& f = fixture();
  for (const auto* idx : {&f.succ_idx, &f.four_idx}) {
    const auto r = run("query --index " + idx->string() +
                       " --family sorted --rect 2:7:3:9");
    REQUIRE(r.code == 0);
    const auto lines = r.out_lines();
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "2\t3\t1");
    CHECK(lines[1] == "2\t9\t2");
    CHECK(lines[2] == "7\t7\t4");
    CHECK(lines[3] == "count=3");
  }
}

TEST_CASE("result caps take a prefix") {
  const auto& f = fixture();
  const auto r = run("query --index " + f.succ_idx.string() +
                     " --family sorted --rect 2:7:3:9 -k 2 --json");
  REQUIRE(r.code == 0);
  const auto lines = r.out_lines();
  REQUIRE(lines.size() == 3);
  CHECK(json::parse(lines[0])["x"] == 2);
  CHECK(json::parse(lines[1])["y"] == 9);
  CHECK(json::parse(lines[2])["count"] == 2);
}

TEST_CASE("successor query returns the min x hit or absent") {
  const auto& f = fixture();
  const auto hit = run("query --index " + f.succ_idx.string() +
                       " --family succ --rect 2::: --json --probes");
  REQUIRE(hit.code == 0);
  const auto lines = hit.out_lines();
  REQUIRE(lines.size() == 2);
  CHECK(json::parse(lines[0])["x"] == 2);
  CHECK(json::parse(lines[0])["id"] == 1);
  CHECK(json::parse(lines[1])["probes"]["nodes"].get<size_t>() > 0);

  const auto miss = run("query --index " + f.succ_idx.string() +
                        " --family succ --rect 10:::");
  REQUIRE(miss.code == 0);
  CHECK(miss.out_lines()[0] == "absent");

  CHECK(run("query --index " + f.succ_idx.string() +
            " --family succ --rect 2:5::")
            .code == 1);
}

TEST_CASE("staircase queries walk the fixture grid") {
  const auto& f = fixture();
  const auto max = run("query --index " + f.grid_idx.string() +
                       " --family maximal");
  REQUIRE(max.code == 0);
  auto lines = max.out_lines();
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "3\t2\t2");
  CHECK(lines[1] == "1\t3\t0");

  const auto vis = run("query --index " + f.grid_idx.string() +
                       " --family visible --at 3:3");
  REQUIRE(vis.code == 0);
  lines = vis.out_lines();
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "3\t2\t2");
  CHECK(lines[1] == "1\t3\t0");

  CHECK(run("query --index " + f.grid_idx.string() + " --family visible")
            .code == 1);
}

TEST_CASE("three sided queries need the matching index kind") {
  const auto& f = fixture();
  const auto r = run("query --index " + f.three_idx.string() +
                     " --family 3sided --rect 2:7::7");
  REQUIRE(r.code == 0);
  const auto lines = r.out_lines();
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "2\t3\t1");
  CHECK(lines[1] == "5\t1\t3");
  CHECK(lines[2] == "7\t7\t4");

  CHECK(run("query --index " + f.succ_idx.string() +
            " --family 3sided --rect 2:7::7")
            .code == 1);
  CHECK(run("query --index " + f.three_idx.string() +
            " --family sorted --rect 2:7:3:9")
            .code == 1);
}

TEST_CASE("text queries cover every family") {
  const auto& f = fixture();
  const auto find = run("query --index " + f.text_idx.string() +
                        " --family find --pattern abra");
  REQUIRE(find.code == 0);
  CHECK(find.out_lines() ==
        std::vector<std::string>{"1", "8", "count=2"});
  const auto split = run("query --index " + f.text_idx.string() +
                         " --family find --pattern abra --algo split");
  CHECK(split.out == find.out);

  const auto pos = run("query --index " + f.text_idx.string() +
                       " --family posfind --pattern abra --window 2:11");
  REQUIRE(pos.code == 0);
  CHECK(pos.out_lines() == std::vector<std::string>{"8", "count=1"});

  const auto non = run("query --index " + f.text_idx.string() +
                       " --family nonoverlap --pattern abra");
  REQUIRE(non.code == 0);
  CHECK(non.out_lines() ==
        std::vector<std::string>{"1", "8", "count=2"});

  const auto chain = run("query --index " + f.text_idx.string() +
                         " --family dontcare --pattern 'ab*cad'");
  REQUIRE(chain.code == 0);
  CHECK(chain.out_lines() ==
        std::vector<std::string>{"1", "5", "count=2"});

  const auto gone = run("query --index " + f.text_idx.string() +
                        " --family dontcare --pattern 'zz*q'");
  REQUIRE(gone.code == 0);
  CHECK(gone.out_lines()[0] == "absent");

  CHECK(run("query --index " + f.text_idx.string() +
            " --family dontcare --pattern '***'")
            .code == 1);
  CHECK(run("query --index " + f.text_idx.string() + " --family find")
            .code == 1);
  CHECK(run("query --index " + f.text_idx.string() +
            " --family posfind --pattern abra")
            .code == 1);
}

TEST_CASE("verification passes on every family") {
  const auto& f = fixture();
  const std::vector<std::string> cmds = {
      "query --index " + f.succ_idx.string() + " --family succ --rect 2:::",
      "query --index " + f.succ_idx.string() +
          " --family sorted --rect 2:7:3:9 -k 2",
      "query --index " + f.four_idx.string() + " --family sorted --rect :::",
      "query --index " + f.three_idx.string() +
          " --family 3sided --rect 2:7::7",
      "query --index " + f.grid_idx.string() + " --family maximal",
      "query --index " + f.grid_idx.string() + " --family visible --at 3:3",
      "query --index " + f.text_idx.string() + " --family find --pattern abra",
      "query --index " + f.text_idx.string() +
          " --family posfind --pattern a --window 4:9",
      "query --index " + f.text_idx.string() +
          " --family nonoverlap --pattern abra",
      "query --index " + f.text_idx.string() +
          " --family dontcare --pattern 'ab*cad'",
      "query --index " + f.text_idx.string() +
          " --family dontcare --pattern 'zz*q'",
  };
  for (const auto& cmd : cmds) {
    const auto r = run(cmd + " --verify");
    CHECK(r.code == 0);
    CHECK(r.err.find("verify: ok") != std::string::npos);
  }
}

TEST_CASE("bench runs a seeded workload and aggregates") {
  const auto& f = fixture();
  const auto r = run("bench --index " + f.four_idx.string() +
                     " --family sorted --queries 25 --seed 3");
  REQUIRE(r.code == 0);
  const json summary = json::parse(r.out_lines().back());
  CHECK(summary["queries"] == 25);
  CHECK(summary["micros"]["mean"].get<double>() >= 0.0);

  const auto verbose = run("bench --index " + f.text_idx.string() +
                           " --family find --queries 10 --seed 4 --json");
  REQUIRE(verbose.code == 0);
  const auto lines = verbose.out_lines();
  REQUIRE(lines.size() == 11);
  CHECK(json::parse(lines[0])["seq"] == 0);
  CHECK(json::parse(lines[9])["micros"].get<double>() >= 0.0);

  CHECK(run("bench --index " + f.text_idx.string() +
            " --family sorted --queries 5")
            .code == 1);
}

TEST_CASE("selftest cross checks against the oracles") {
  const auto r = run("selftest --n 64 --queries 40 --seed 5");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("selftest ok") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("usage errors exit one") {
  const auto& f = fixture();
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("--help").code == 0);
  CHECK(run("build --input x").code == 1);
  CHECK(run("build --input " + f.pts_file.string() +
            " --kind wedge --out /tmp/x.bin")
            .code == 1);
  CHECK(run("query --index " + f.succ_idx.string() +
            " --family bogus --rect :::")
            .code == 1);
  CHECK(run("query --index " + f.succ_idx.string() +
            " --family sorted --rect 1:2:3")
            .code == 1);
}

TEST_CASE("io errors exit three") {
  const auto& f = fixture();
  CHECK(run("build --input " + (work_dir() / "missing.txt").string() +
            " --kind succ --out /tmp/x.bin")
            .code == 3);
  const fs::path bad_pts = work_dir() / "bad_pts.txt";
  spit(bad_pts, "1 2\nfoo bar\n");
  CHECK(run("build --input " + bad_pts.string() +
            " --kind succ --out /tmp/x.bin")
            .code == 3);
  const fs::path empty_pts = work_dir() / "empty_pts.txt";
  spit(empty_pts, "# nothing\n");
  CHECK(run("build --input " + empty_pts.string() +
            " --kind succ --out /tmp/x.bin")
            .code == 3);
  CHECK(run("query --index " + (work_dir() / "missing.bin").string() +
            " --family sorted --rect :::")
            .code == 3);
  const fs::path junk = work_dir() / "junk.bin";
  spit(junk, "this is not an index file");
  CHECK(run("query --index " + junk.string() + " --family sorted --rect :::")
            .code == 3);
  CHECK(run("build --input " + f.pts_file.string() +
            " --kind succ --out /nonexistent-dir/x.bin")
            .code == 3);
}

TEST_CASE("memory budget env var warns without failing") {
  const auto& f = fixture();
  const auto r = run("query --index " + f.succ_idx.string() +
                         " --family succ --rect 2:::",
                     "SRR_MEMORY_BUDGET_MB=0.000001");
  CHECK(r.code == 0);
  CHECK(r.err.find("warning:") != std::string::npos);
  CHECK(r.err.find("SRR_MEMORY_BUDGET_MB") != std::string::npos);
}
