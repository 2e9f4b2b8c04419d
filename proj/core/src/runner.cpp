#include "bittery/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bittery/extraction.hpp"
#include "bittery/landauer.hpp"
#include "bittery/oracle.hpp"
#include "bittery/storage.hpp"
#include "bittery/verify.hpp"

namespace bittery {

using nlohmann::json;

namespace {

// fixed formatting so identical (config, seed) gives identical bytes
std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string provenance(const ExperimentConfig& cfg, const RunOptions& opt) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "# bittery %s config=%016llx seed=%llu kT=%s",
                kToolVersion,
                static_cast<unsigned long long>(cfg.digest),
                static_cast<unsigned long long>(opt.seed),
                num(opt.kT).c_str());
  return buf;
}

std::ofstream open_out(const std::string& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / file,
                    std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write output file: " + file);
  return out;
}

SchemeSpec make_scheme(const std::string& name, double eps, std::int64_t c) {
  if (name == "deterministic") return SchemeSpec::deterministic(eps);
  if (name == "bounded") return SchemeSpec::bounded(eps, c);
  if (name == "guaranteed") return SchemeSpec::guaranteed(eps);
  throw ConfigError("unknown scheme \"" + name + "\"");
}

oracle::Rational parse_rational(const std::string& text) {
  try {
    return oracle::Rational(text);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse rational \"" + text + "\"");
  }
}

int run_maxwork(const ExperimentConfig& cfg, const RunOptions& opt,
                std::ostream& out) {
  const Temperature temp = Temperature::from_kT(opt.kT);
  const SystemSpec sys = cfg.make_system();
  const DiagonalState state = cfg.make_state(sys, temp);
  const std::int64_t cells = cfg.cells > 0 ? cfg.cells : 8;
  const auto epsilons = cfg.epsilons.empty() ? std::vector<double>{0.0}
                                             : cfg.epsilons;
  const auto schemes = cfg.schemes.empty()
                           ? std::vector<std::string>{"deterministic"}
                           : cfg.schemes;
  json records = json::array();
  for (const auto& scheme_name : schemes) {
    for (double eps : epsilons) {
      const auto r = max_work(state, sys,
                              make_scheme(scheme_name, eps, cfg.bounded_c),
                              temp, cells);
      records.push_back({{"scheme", scheme_name},
                         {"epsilon", eps},
                         {"w_max", r.w_max},
                         {"f_min", r.f_min},
                         {"f_thermal", r.f_thermal},
                         {"k_star", r.k_star}});
      char line[160];
      std::snprintf(line, sizeof line,
                    "maxwork scheme=%s eps=%g w_max=%.6f k_star=%lld",
                    scheme_name.c_str(), eps, r.w_max,
                    static_cast<long long>(r.k_star));
      out << line << "\n";
    }
  }
  auto file = open_out(opt.out_dir, "maxwork.json");
  file << records.dump(2) << "\n";
  return 0;
}

int run_sweep(const ExperimentConfig& cfg, const RunOptions& opt,
              std::ostream& out) {
  const Temperature temp = Temperature::from_kT(opt.kT);
  const SystemSpec sys = cfg.make_system();
  const DiagonalState state = cfg.make_state(sys, temp);
  const std::int64_t cells = cfg.cells > 0 ? cfg.cells : 8;
  if (cfg.epsilons.empty() || cfg.schemes.empty())
    throw ConfigError("sweep requires \"epsilons\" and \"schemes\"");

  struct Point {
    std::string scheme;
    double epsilon = 0.0;
  };
  std::vector<Point> points;
  for (const auto& s : cfg.schemes)
    for (double e : cfg.epsilons) points.push_back({s, e});

  // isolated pure evaluations; the collector below writes in config order
  std::vector<ExtractionResult> results(points.size());
  std::atomic<std::size_t> next{0};
  const int jobs = std::max(1, opt.jobs);
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < points.size();
         i = next.fetch_add(1))
      results[i] = max_work(
          state, sys,
          make_scheme(points[i].scheme, points[i].epsilon, cfg.bounded_c),
          temp, cells);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  auto file = open_out(opt.out_dir, "sweep.csv");
  file << provenance(cfg, opt) << "\n";
  file << "epsilon,scheme,w_max,f_min,f_thermal,k_star\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = results[i];
    file << num(points[i].epsilon) << ',' << points[i].scheme << ','
         << num(r.w_max) << ',' << num(r.f_min) << ',' << num(r.f_thermal)
         << ',' << r.k_star << "\n";
    char line[160];
    std::snprintf(line, sizeof line,
                  "sweep scheme=%s eps=%g w_max=%.6f k_star=%lld",
                  points[i].scheme.c_str(), points[i].epsilon, r.w_max,
                  static_cast<long long>(r.k_star));
    out << line << "\n";
  }
  return 0;
}

int run_landauer(const ExperimentConfig& cfg, const RunOptions& opt,
                 std::ostream& out) {
  if (!cfg.schedule) throw ConfigError("landauer requires a \"schedule\"");
  const Temperature temp = Temperature::from_kT(opt.kT);
  const auto trace = reset_work(*cfg.schedule, temp);
  auto file = open_out(opt.out_dir, "landauer.csv");
  file << provenance(cfg, opt) << "\n";
  file << "gap,p1,dW,dQ\n";
  for (const auto& s : trace.steps)
    file << num(s.gap_after) << ',' << num(s.occupation) << ',' << num(s.work)
         << ',' << num(s.heat) << "\n";
  const double limit = quasistatic_reset_work(cfg.schedule->g_max, temp);
  char line[200];
  std::snprintf(line, sizeof line,
                "landauer N=%lld W=%.9f quasistatic=%.9f |W-kT*ln2|=%.3e",
                static_cast<long long>(cfg.schedule->steps), trace.work_total,
                limit,
                std::abs(trace.work_total - opt.kT * std::numbers::ln2));
  out << line << "\n";
  return 0;
}

int run_addwork(const ExperimentConfig& cfg, const RunOptions& opt,
                std::ostream& out) {
  if (!cfg.weight || !cfg.window)
    throw ConfigError("addwork requires \"weight\" and \"window\"");
  const Temperature temp = Temperature::from_kT(opt.kT);
  const WeightLadder ladder(cfg.weight->spacing, cfg.weight->levels,
                            cfg.weight->origin);
  const auto aw = weight_additional_work(ladder, cfg.window->w_min,
                                         cfg.window->w_max, temp);
  // the value depends only on the window shape, never on its position
  const double shift = 3.0 * ladder.spacing();
  const auto moved = weight_additional_work(
      ladder, cfg.window->w_min + shift, cfg.window->w_max + shift, temp);
  if (moved.value != aw.value)
    throw Error("additional work is not shift invariant");
  json record = {{"w_add", aw.value},
                 {"closed_form", aw.closed_form},
                 {"w_min", cfg.window->w_min},
                 {"w_max", cfg.window->w_max},
                 {"spacing", ladder.spacing()}};
  auto file = open_out(opt.out_dir, "addwork.json");
  file << record.dump(2) << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "addwork w_add=%.9f closed_form=%.9f",
                aw.value, aw.closed_form);
  out << line << "\n";
  return 0;
}

int run_ledger(const ExperimentConfig& cfg, const RunOptions& opt,
               std::ostream& out) {
  if (cfg.ledger_distribution.empty())
    throw ConfigError("ledger requires a \"ledger\" distribution");
  if (cfg.cells <= 0)
    throw ConfigError("ledger requires \"bittery\" with n >= 1");
  const Temperature temp = Temperature::from_kT(opt.kT);

  WeightTransition transition;
  transition.distribution = cfg.ledger_distribution;
  const StorageLedger weight = weight_ledger(transition, temp);

  // informational storage of the same mean work: reset k qubits
  double mean_w = 0.0;
  for (const auto& [w, p] : cfg.ledger_distribution) mean_w += p * w;
  const double quantum = temp.kT() * std::numbers::ln2;
  std::int64_t k = static_cast<std::int64_t>(
      std::floor(mean_w / quantum + 1e-9));
  k = std::clamp<std::int64_t>(k, 0, cfg.cells);
  const BitteryState final_state =
      BitteryState::pure_stack(cfg.cells, cfg.cells - k);
  const double delta_s =
      bittery_entropy(final_state) -
      static_cast<double>(cfg.cells) * std::numbers::ln2;
  const StorageLedger bittery = StorageLedger::make(0.0, delta_s, temp);

  auto file = open_out(opt.out_dir, "ledger.csv");
  file << provenance(cfg, opt) << "\n";
  file << "storage,delta_E,delta_S,delta_F,heat_like\n";
  file << "weight," << num(weight.delta_E) << ',' << num(weight.delta_S) << ','
       << num(weight.delta_F) << ',' << num(weight.heat_like) << "\n";
  file << "bittery," << num(bittery.delta_E) << ',' << num(bittery.delta_S)
       << ',' << num(bittery.delta_F) << ',' << num(bittery.heat_like) << "\n";
  char line[200];
  std::snprintf(line, sizeof line,
                "ledger weight dF=%.6f bittery dF=%.6f (k=%lld of n=%lld)",
                weight.delta_F, bittery.delta_F, static_cast<long long>(k),
                static_cast<long long>(cfg.cells));
  out << line << "\n";
  return 0;
}

int run_oracle_verify(const ExperimentConfig& cfg, const RunOptions& opt,
                      std::ostream& out) {
  using oracle::Rational;
  if (cfg.explicit_bath.empty())
    throw ConfigError("oracle-verify requires an explicit bath");
  if (cfg.oracle_epsilons.empty())
    throw ConfigError("oracle-verify requires oracle.epsilons");

  oracle::OracleInstance inst;
  for (const auto& lv : cfg.system) {
    const double rounded = std::round(lv.energy);
    if (std::abs(lv.energy - rounded) > 1e-9)
      throw ConfigError("oracle system energies must be integers");
    inst.system.push_back({static_cast<std::int64_t>(rounded),
                           lv.multiplicity});
  }
  for (const auto& lv : cfg.explicit_bath) {
    const double rounded = std::round(lv.energy);
    if (std::abs(lv.energy - rounded) > 1e-9)
      throw ConfigError("oracle bath energies must be integers");
    inst.bath.push_back({static_cast<std::int64_t>(rounded),
                         lv.multiplicity});
  }
  inst.cells = cfg.cells;
  inst.dimension_cap = cfg.dimension_cap;
  switch (cfg.state.kind) {
    case ExperimentConfig::StateConfig::Kind::Thermal:
      inst.state.resize(inst.system.size());
      inst.state = oracle::thermal_weights(inst);
      break;
    case ExperimentConfig::StateConfig::Kind::Pure: {
      if (cfg.state.pure_level < 0 ||
          cfg.state.pure_level >=
              static_cast<std::int64_t>(inst.system.size()))
        throw ConfigError("pure level index out of range");
      for (const auto& lv : inst.system)
        inst.state.emplace_back(
            static_cast<std::size_t>(lv.multiplicity), Rational(0));
      inst.state[static_cast<std::size_t>(cfg.state.pure_level)][0] = 1;
      break;
    }
    default:
      throw ConfigError("oracle-verify supports thermal or pure states");
  }

  const auto bulk = oracle::bulk_shell_energies(inst);
  json results = json::array();
  bool all_agree = true;
  for (const auto& eps_text : cfg.oracle_epsilons) {
    const Rational eps = parse_rational(eps_text);
    const std::int64_t formula = oracle::exact_k_star(inst, eps);
    const std::int64_t brute = oracle::brute_force_max_reset(
        inst, eps, SchemeSpec::Kind::Deterministic);
    const bool agree = formula == brute;
    all_agree = all_agree && agree;
    results.push_back({{"epsilon", eps_text},
                       {"formula_k_star", formula},
                       {"oracle_k", brute},
                       {"agree", agree},
                       {"shells", bulk.size()}});
    char line[160];
    std::snprintf(line, sizeof line,
                  "oracle-verify eps=%s formula=%lld oracle=%lld %s",
                  eps_text.c_str(), static_cast<long long>(formula),
                  static_cast<long long>(brute),
                  agree ? "agree" : "DISAGREE");
    out << line << "\n";
  }
  json report = {{"instance",
                  {{"system_levels", inst.system.size()},
                   {"bath_levels", inst.bath.size()},
                   {"cells", inst.cells}}},
                 {"shells_checked", bulk.size()},
                 {"results", results}};
  auto file = open_out(opt.out_dir, "oracle.json");
  file << report.dump(2) << "\n";
  return all_agree ? 0 : 1;
}

}  // namespace

int run_task(const ExperimentConfig& config, const RunOptions& options,
             std::ostream& out) {
  switch (config.task) {
    case ExperimentConfig::Task::Maxwork:
      return run_maxwork(config, options, out);
    case ExperimentConfig::Task::Sweep:
      return run_sweep(config, options, out);
    case ExperimentConfig::Task::Landauer:
      return run_landauer(config, options, out);
    case ExperimentConfig::Task::Addwork:
      return run_addwork(config, options, out);
    case ExperimentConfig::Task::Ledger:
      return run_ledger(config, options, out);
    case ExperimentConfig::Task::OracleVerify:
      return run_oracle_verify(config, options, out);
  }
  throw ConfigError("unreachable task");
}

int run_verify_all(std::uint64_t seed, const std::string& out_dir,
                   std::ostream& out) {
  const auto results = verify_all(seed);
  json report = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    report.push_back({{"name", r.name}, {"pass", r.pass},
                      {"detail", r.detail}});
    out << (r.pass ? "PASS " : "FAIL ") << r.name << " - " << r.detail
        << "\n";
  }
  std::filesystem::create_directories(out_dir);
  std::ofstream file(std::filesystem::path(out_dir) / "verify.json",
                     std::ios::binary | std::ios::trunc);
  file << report.dump(2) << "\n";
  out << (all_pass ? "verify-all: all checks passed"
                   : "verify-all: FAILURES present")
      << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace bittery
