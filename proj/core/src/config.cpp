#include "bittery/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bittery {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError(std::string("unknown key \"") + key + "\" in " + where);
  }
}

ExperimentConfig::Task parse_task(const std::string& name) {
  if (name == "maxwork") return ExperimentConfig::Task::Maxwork;
  if (name == "sweep") return ExperimentConfig::Task::Sweep;
  if (name == "landauer") return ExperimentConfig::Task::Landauer;
  if (name == "addwork") return ExperimentConfig::Task::Addwork;
  if (name == "ledger") return ExperimentConfig::Task::Ledger;
  if (name == "oracle-verify") return ExperimentConfig::Task::OracleVerify;
  throw ConfigError("unknown task \"" + name + "\"");
}

std::vector<SystemLevel> parse_system(const json& arr) {
  if (!arr.is_array()) throw ConfigError("\"system\" must be an array");
  std::vector<SystemLevel> out;
  for (const auto& row : arr) {
    if (!row.is_array() || row.size() != 2)
      throw ConfigError("system levels are [energy, multiplicity] pairs");
    out.push_back({row[0].get<double>(), row[1].get<std::int64_t>()});
  }
  return out;
}

ExperimentConfig::StateConfig parse_state(const json& obj) {
  if (!obj.is_object()) throw ConfigError("\"state\" must be an object");
  check_keys(obj, "state", {"thermal", "pure", "level_totals", "weights"});
  if (obj.size() != 1)
    throw ConfigError("\"state\" takes exactly one of thermal/pure/"
                      "level_totals/weights");
  ExperimentConfig::StateConfig s;
  if (obj.contains("thermal")) {
    if (!obj["thermal"].is_boolean() || !obj["thermal"].get<bool>())
      throw ConfigError("\"thermal\" must be true when present");
    s.kind = ExperimentConfig::StateConfig::Kind::Thermal;
  } else if (obj.contains("pure")) {
    s.kind = ExperimentConfig::StateConfig::Kind::Pure;
    s.pure_level = obj["pure"].get<std::int64_t>();
  } else if (obj.contains("level_totals")) {
    s.kind = ExperimentConfig::StateConfig::Kind::LevelTotals;
    s.totals = obj["level_totals"].get<std::vector<double>>();
  } else {
    s.kind = ExperimentConfig::StateConfig::Kind::Weights;
    s.weights = obj["weights"].get<std::vector<std::vector<double>>>();
  }
  return s;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  check_keys(doc, "config root",
             {"task", "system", "state", "bath", "bittery", "weight",
              "epsilons", "schemes", "bounded_c", "schedule", "window",
              "ledger", "oracle", "dimension_cap"});

  ExperimentConfig cfg;
  cfg.digest = fnv1a64(text);
  if (!doc.contains("task")) throw ConfigError("missing \"task\"");
  cfg.task = parse_task(doc["task"].get<std::string>());

  if (doc.contains("system")) cfg.system = parse_system(doc["system"]);
  if (doc.contains("state")) cfg.state = parse_state(doc["state"]);

  if (doc.contains("bath")) {
    const json& b = doc["bath"];
    check_keys(b, "bath", {"analytic", "explicit"});
    if (b.size() != 1)
      throw ConfigError("\"bath\" takes exactly one of analytic/explicit");
    if (b.contains("analytic")) {
      const json& a = b["analytic"];
      check_keys(a, "bath.analytic",
                 {"base", "spacing", "levels", "ref_log_mult"});
      AnalyticBathConfig ab;
      if (a.contains("base")) ab.base = a["base"].get<int>();
      if (a.contains("spacing")) ab.spacing = a["spacing"].get<double>();
      if (a.contains("levels")) ab.levels = a["levels"].get<std::int64_t>();
      if (a.contains("ref_log_mult"))
        ab.ref_log_mult = a["ref_log_mult"].get<double>();
      cfg.analytic_bath = ab;
    } else {
      for (const auto& row : b["explicit"]) {
        if (!row.is_array() || row.size() != 2)
          throw ConfigError("explicit bath levels are [E, M] pairs");
        cfg.explicit_bath.push_back(
            {row[0].get<double>(), row[1].get<std::int64_t>()});
      }
    }
  }

  if (doc.contains("bittery")) {
    check_keys(doc["bittery"], "bittery", {"n"});
    cfg.cells = doc["bittery"].value("n", std::int64_t{0});
  }

  if (doc.contains("weight")) {
    const json& w = doc["weight"];
    check_keys(w, "weight", {"spacing", "levels", "origin"});
    WeightConfig wc;
    wc.spacing = w.value("spacing", 1.0);
    wc.levels = w.value("levels", std::int64_t{2});
    wc.origin = w.value("origin", 0.0);
    cfg.weight = wc;
  }

  if (doc.contains("epsilons"))
    cfg.epsilons = doc["epsilons"].get<std::vector<double>>();
  if (doc.contains("schemes"))
    cfg.schemes = doc["schemes"].get<std::vector<std::string>>();
  if (doc.contains("bounded_c"))
    cfg.bounded_c = doc["bounded_c"].get<std::int64_t>();

  if (doc.contains("schedule")) {
    const json& s = doc["schedule"];
    check_keys(s, "schedule", {"steps", "g_max", "rule", "ratio"});
    StaircaseSchedule sched;
    sched.steps = s.value("steps", std::int64_t{1});
    sched.g_max = s.value("g_max", 0.0);
    const std::string rule = s.value("rule", std::string("uniform"));
    if (rule == "uniform") {
      sched.rule = StaircaseSchedule::Rule::Uniform;
    } else if (rule == "geometric") {
      sched.rule = StaircaseSchedule::Rule::Geometric;
    } else {
      throw ConfigError("schedule.rule must be uniform or geometric");
    }
    sched.ratio = s.value("ratio", 2.0);
    cfg.schedule = sched;
  }

  if (doc.contains("window")) {
    const json& w = doc["window"];
    check_keys(w, "window", {"w_min", "w_max"});
    WindowConfig win;
    win.w_min = w.value("w_min", 0.0);
    win.w_max = w.value("w_max", 0.0);
    cfg.window = win;
  }

  if (doc.contains("ledger")) {
    const json& l = doc["ledger"];
    check_keys(l, "ledger", {"distribution"});
    for (const auto& row : l["distribution"]) {
      if (!row.is_array() || row.size() != 2)
        throw ConfigError("ledger distribution entries are [w, p] pairs");
      cfg.ledger_distribution.emplace_back(row[0].get<double>(),
                                           row[1].get<double>());
    }
  }

  if (doc.contains("oracle")) {
    const json& o = doc["oracle"];
    check_keys(o, "oracle", {"epsilons"});
    cfg.oracle_epsilons = o["epsilons"].get<std::vector<std::string>>();
  }

  if (doc.contains("dimension_cap"))
    cfg.dimension_cap = doc["dimension_cap"].get<std::int64_t>();
  return cfg;
}

SystemSpec ExperimentConfig::make_system() const {
  if (system.empty()) throw ConfigError("task requires a \"system\" block");
  return SystemSpec(system);
}

DiagonalState ExperimentConfig::make_state(const SystemSpec& system_spec,
                                           const Temperature& temp) const {
  switch (state.kind) {
    case StateConfig::Kind::Thermal:
      return gibbs_state(system_spec, temp);
    case StateConfig::Kind::Pure:
      return DiagonalState::pure(system_spec,
                                 static_cast<std::size_t>(state.pure_level));
    case StateConfig::Kind::LevelTotals:
      return DiagonalState::from_level_totals(system_spec, state.totals);
    case StateConfig::Kind::Weights:
      return DiagonalState::from_state_weights(system_spec, state.weights);
  }
  throw ConfigError("unreachable state kind");
}

BathSpec ExperimentConfig::make_bath() const {
  if (analytic_bath) {
    const auto& a = *analytic_bath;
    return BathSpec::analytic(a.base, a.spacing, a.levels, a.ref_log_mult);
  }
  if (!explicit_bath.empty()) return BathSpec::explicit_levels(explicit_bath);
  throw ConfigError("task requires a \"bath\" block");
}

const char* ExperimentConfig::task_name(Task task) {
  switch (task) {
    case Task::Maxwork: return "maxwork";
    case Task::Sweep: return "sweep";
    case Task::Landauer: return "landauer";
    case Task::Addwork: return "addwork";
    case Task::Ledger: return "ledger";
    case Task::OracleVerify: return "oracle-verify";
  }
  return "?";
}

}  // namespace bittery
