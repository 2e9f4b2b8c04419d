#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bittery/runner.hpp"

using namespace bittery;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bittery_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kSweep = R"({
  "task": "sweep",
  "system": [[0.0, 1], [1.0, 1]],
  "state": {"level_totals": [0.3, 0.7]},
  "bittery": {"n": 6},
  "epsilons": [0.0, 0.1, 0.3],
  "schemes": ["deterministic", "bounded", "guaranteed"]
})";

}  // namespace

TEST_CASE("sweep output: 9 rows, scheme independent, byte deterministic") {
  const auto cfg = ExperimentConfig::parse(kSweep);
  const auto dir1 = fresh_dir("sweep1");
  const auto dir2 = fresh_dir("sweep2");
  std::ostringstream log;
  RunOptions opt;
  opt.out_dir = dir1.string();
  CHECK(run_task(cfg, opt, log) == 0);
  opt.out_dir = dir2.string();
  opt.jobs = 4;  // concurrency must not affect the bytes
  CHECK(run_task(cfg, opt, log) == 0);

  const std::string csv = slurp(dir1 / "sweep.csv");
  CHECK(csv == slurp(dir2 / "sweep.csv"));
  CHECK(csv.rfind("# bittery ", 0) == 0);  // provenance comment first

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // comment
  std::getline(lines, line);
  CHECK(line == "epsilon,scheme,w_max,f_min,f_thermal,k_star");
  std::vector<std::string> rows;
  while (std::getline(lines, line))
    if (!line.empty()) rows.push_back(line);
  REQUIRE(rows.size() == 9);

  // w_max (third field) depends only on epsilon, never on the scheme
  auto field = [](const std::string& row, int idx) {
    std::istringstream ss(row);
    std::string f;
    for (int i = 0; i <= idx; ++i) std::getline(ss, f, ',');
    return f;
  };
  for (int e = 0; e < 3; ++e)
    for (int s = 1; s < 3; ++s)
      CHECK(field(rows[static_cast<std::size_t>(e)], 2) ==
            field(rows[static_cast<std::size_t>(3 * s + e)], 2));
}

TEST_CASE("maxwork thermal summary reports zero") {
  const auto cfg = ExperimentConfig::parse(R"({
    "task": "maxwork",
    "system": [[0.0, 1], [1.0, 1]],
    "state": {"thermal": true},
    "bittery": {"n": 4},
    "epsilons": [0.0]
  })");
  const auto dir = fresh_dir("maxwork");
  std::ostringstream log;
  RunOptions opt;
  opt.out_dir = dir.string();
  CHECK(run_task(cfg, opt, log) == 0);
  CHECK(log.str().find("w_max=0.000000 k_star=0") != std::string::npos);
  CHECK(fs::exists(dir / "maxwork.json"));
}

TEST_CASE("landauer trace artifact") {
  const auto cfg = ExperimentConfig::parse(R"({
    "task": "landauer",
    "schedule": {"steps": 200, "g_max": 25.0}
  })");
  const auto dir = fresh_dir("landauer");
  std::ostringstream log;
  RunOptions opt;
  opt.out_dir = dir.string();
  CHECK(run_task(cfg, opt, log) == 0);
  const std::string csv = slurp(dir / "landauer.csv");
  std::istringstream lines(csv);
  std::string line;
  int count = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++count;
  CHECK(count == 202);  // comment + header + one row per step
  CHECK(log.str().find("|W-kT*ln2|=") != std::string::npos);
}

TEST_CASE("addwork and ledger artifacts") {
  const auto aw = ExperimentConfig::parse(R"({
    "task": "addwork",
    "weight": {"spacing": 0.5, "levels": 32, "origin": 0.0},
    "window": {"w_min": 0.5, "w_max": 3.0}
  })");
  const auto dir = fresh_dir("addwork");
  std::ostringstream log;
  RunOptions opt;
  opt.out_dir = dir.string();
  CHECK(run_task(aw, opt, log) == 0);
  CHECK(slurp(dir / "addwork.json").find("closed_form") != std::string::npos);

  const auto ledger = ExperimentConfig::parse(R"({
    "task": "ledger",
    "bittery": {"n": 4},
    "ledger": {"distribution": [[0.6931471805599453, 0.5], [1.3862943611198906, 0.5]]}
  })");
  const auto dir2 = fresh_dir("ledger");
  opt.out_dir = dir2.string();
  CHECK(run_task(ledger, opt, log) == 0);
  const std::string csv = slurp(dir2 / "ledger.csv");
  CHECK(csv.find("storage,delta_E,delta_S,delta_F,heat_like") !=
        std::string::npos);
  CHECK(csv.find("weight,") != std::string::npos);
  CHECK(csv.find("bittery,") != std::string::npos);
}

TEST_CASE("oracle-verify task agrees with the formula") {
  const auto cfg = ExperimentConfig::parse(R"({
    "task": "oracle-verify",
    "system": [[0, 1], [1, 1]],
    "state": {"pure": 1},
    "bath": {"explicit": [[0, 1], [1, 2], [2, 4], [3, 8]]},
    "bittery": {"n": 3},
    "oracle": {"epsilons": ["0", "1/4", "1/2"]}
  })");
  const auto dir = fresh_dir("oracle");
  std::ostringstream log;
  RunOptions opt;
  opt.out_dir = dir.string();
  CHECK(run_task(cfg, opt, log) == 0);
  CHECK(log.str().find("DISAGREE") == std::string::npos);
  CHECK(slurp(dir / "oracle.json").find("\"agree\": true") !=
        std::string::npos);
}

TEST_CASE("config errors surface as ConfigError") {
  const auto dir = fresh_dir("badcfg");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(ExperimentConfig::load(bad.string()), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::load((dir / "missing.json").string()),
                  ConfigError);

  // sweep without its grid
  const auto cfg = ExperimentConfig::parse(R"({
    "task": "sweep",
    "system": [[0.0, 1]],
    "state": {"thermal": true}
  })");
  std::ostringstream log;
  RunOptions opt;
  opt.out_dir = dir.string();
  CHECK_THROWS_AS(run_task(cfg, opt, log), ConfigError);
}

TEST_CASE("verify-all writes a machine readable report") {
  const auto dir = fresh_dir("verifyall");
  std::ostringstream log;
  CHECK(run_verify_all(7, dir.string(), log) == 0);
  const std::string report = slurp(dir / "verify.json");
  CHECK(report.find("\"pass\": true") != std::string::npos);
  CHECK(report.find("\"pass\": false") == std::string::npos);
  CHECK(log.str().find("all checks passed") != std::string::npos);
}
