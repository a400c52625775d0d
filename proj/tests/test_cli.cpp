#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

const char* cli_path() {
  const char* p = std::getenv("MHCOUNT_CLI");
  REQUIRE_MESSAGE(p != nullptr, "MHCOUNT_CLI must point at the built binary");
  return p;
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "mhcount_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = work_dir() / name;
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

const std::string kMarkoff = R"({
  "spec": {"f": [[0,0,1],[0,0,1],[0,0,1]], "k": [1,1,1], "a": 3, "m": 1},
  "boxes": [{"u": 0, "h": 100}]
})";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("count emits the documented csv") {
  const auto cfg = write_config("markoff.json", kMarkoff);
  const auto r = run("count --config " + cfg.string());
  CHECK(r.code == 0);
  CHECK(r.out ==
        "# schema=count/v1\n"
        "u,h,strategy,count,elapsed,flags\n"
        "0;0;0,100,full-enumeration,34,0,\n");
}

TEST_CASE("identical invocations produce identical bytes") {
  const auto cfg = write_config("markoff2.json", kMarkoff);
  const auto first = run("count --config " + cfg.string());
  const auto second = run("count --config " + cfg.string());
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  const auto w1 = run("count --workers 1 --config " + cfg.string());
  const auto w4 = run("count --workers 4 --config " + cfg.string());
  CHECK(w1.out == w4.out);
  CHECK(w1.out == first.out);
}

TEST_CASE("solve-last strategy is selectable through config") {
  const auto cfg = write_config("markoff_sl.json", R"({
    "spec": {"f": [[0,0,1],[0,0,1],[0,0,1]], "k": [1,1,1], "a": 3, "m": 1},
    "boxes": [{"u": 0, "h": 100}],
    "strategy": "solve-last"
  })");
  const auto r = run("count --config " + cfg.string());
  CHECK(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 3);
  const auto cells = split(ls[2], ',');
  REQUIRE(cells.size() == 6);
  CHECK(cells[2] == "solve-last");
  CHECK(cells[3] == "34");
}

TEST_CASE("output lands in the file when --out is given") {
  const auto cfg = write_config("markoff3.json", kMarkoff);
  const fs::path target = work_dir() / "result.csv";
  std::error_code ec;
  fs::remove(target, ec);
  const auto direct = run("count --config " + cfg.string());
  const auto filed = run("count --config " + cfg.string() + " --out " + target.string());
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(target) == direct.out);
}

TEST_CASE("verification suites pass and report their case counts") {
  const auto cfg = write_config("verify_orth.json", R"({"verify": {"suites": ["orthogonality"]}})");
  const auto r = run("verify --config " + cfg.string());
  CHECK(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "# schema=verify/v1");
  CHECK(ls[1] == "suite,cases,failures");
  const auto cells = split(ls[2], ',');
  REQUIRE(cells.size() == 3);
  CHECK(cells[0] == "orthogonality");
  CHECK(std::stol(cells[1]) > 0);
  CHECK(cells[2] == "0");
}

TEST_CASE("a perturbed phase polynomial fails verification") {
  const auto cfg = write_config("verify_perturb.json",
                                R"({"verify": {"suites": ["postnikov"], "perturb_postnikov": true}})");
  const auto r = run("verify --config " + cfg.string());
  CHECK(r.code == 1);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 3);
  const auto cells = split(ls[2], ',');
  REQUIRE(cells.size() == 3);
  CHECK(std::stol(cells[2]) > 0);
}

TEST_CASE("usage and configuration errors exit with 2") {
  const auto bad_suite = write_config("verify_bad.json", R"({"verify": {"suites": ["nope"]}})");
  CHECK(run("verify --config " + bad_suite.string()).code == 2);

  const auto empty_suites = write_config("verify_empty.json", R"({"verify": {"suites": []}})");
  CHECK(run("verify --config " + empty_suites.string()).code == 2);

  const auto bogus = write_config("bogus.json", R"({"spam": 1})");
  CHECK(run("count --config " + bogus.string()).code == 2);

  const auto empty = write_config("empty.json", "");
  CHECK(run("count --config " + empty.string()).code == 2);

  CHECK(run("count").code == 2);  // spec and boxes are required
  CHECK(run("").code == 2);       // a subcommand is required

  const auto cs = write_config("charsum_bad.json", R"({"charsum": {"op": "nope"}})");
  const auto r = run("charsum --config " + cs.string());
  CHECK(r.code == 2);
  CHECK(r.out.empty());  // nothing may be emitted before the op is validated
}

TEST_CASE("budget exhaustion exits with 1") {
  const auto cfg = write_config("markoff4.json", kMarkoff);
  const auto r = run("count --budget 10 --config " + cfg.string());
  CHECK(r.code == 1);
}

TEST_CASE("charsum tabulates ramanujan sums with their magnitudes") {
  const auto cfg = write_config("charsum_ram.json",
                                R"({"charsum": {"op": "ramanujan", "q": 35}})");
  const auto r = run("charsum --config " + cfg.string());
  CHECK(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2 + 35);
  CHECK(ls[0] == "# schema=charsum/v1");
  CHECK(ls[1] == "op,params,re,im,magnitude,bound,ratio,flags");
  for (int64_t lambda = 1; lambda <= 35; ++lambda) {
    const auto cells = split(ls[static_cast<size_t>(1 + lambda)], ',');
    REQUIRE(cells.size() == 8);
    CHECK(cells[0] == "ramanujan");
    const double mag = std::strtod(cells[4].c_str(), nullptr);
    const int64_t g = std::gcd(lambda, int64_t{35});
    const int64_t mu = oracle::mobius(35 / g);
    const double expect = mu == 0 ? 0.0 : static_cast<double>(oracle::phi(g));
    CHECK(mag == doctest::Approx(expect));
    CHECK(std::strtod(cells[5].c_str(), nullptr) ==
          doctest::Approx(static_cast<double>(oracle::phi(g))));
  }
}

TEST_CASE("gauss sum sweep flags principal and shared-factor rows") {
  const auto cfg = write_config("charsum_gauss.json",
                                R"({"charsum": {"op": "gauss-sum", "q": {"square_free": [7]}, "chi": "all", "lambda": 1}})");
  const auto r = run("charsum --config " + cfg.string());
  CHECK(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2 + 6);
  int principal_rows = 0;
  for (size_t i = 2; i < ls.size(); ++i) {
    const auto cells = split(ls[i], ',');
    REQUIRE(cells.size() == 8);
    const double mag = std::strtod(cells[4].c_str(), nullptr);
    if (ls[i].find("principal") != std::string::npos) {
      ++principal_rows;
      CHECK(mag == doctest::Approx(1.0));  // |c_7(1)| = 1
    } else {
      CHECK(mag == doctest::Approx(std::sqrt(7.0)));
    }
  }
  CHECK(principal_rows == 1);
}

TEST_CASE("scan-density grids are reproducible") {
  const auto cfg = write_config("scan.json", R"({
    "spec": {"f": [[0,0,1],[0,0,1],[0,0,1]], "k": [1,1,1], "a": 3, "m": 1},
    "grid": {"u": 0, "h_values": [20, 50]},
    "modulus": {"square_free": [5, 7]},
    "scan": {"reference": "d(d+1)/2"}
  })");
  const auto one = run("scan-density --config " + cfg.string());
  const auto two = run("scan-density --config " + cfg.string());
  CHECK(one.code == 0);
  CHECK(one.out == two.out);
  const auto ls = lines_of(one.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "# schema=scan-density/v1");
  const auto first_row = split(ls[2], ',');
  REQUIRE(first_row.size() == 9);
  CHECK(first_row[0] == "20");
  CHECK(first_row[3] == "35");
  // reference exponent d(d+1)/2 with d = 2
  CHECK(std::strtod(first_row[7].c_str(), nullptr) == doctest::Approx(3.0));
}

TEST_CASE("help is not an error") {
  CHECK(run("--help").code == 0);
  CHECK(run("count --help").code == 0);
}
