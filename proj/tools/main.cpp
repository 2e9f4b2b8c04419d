#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bittery/config.hpp"
#include "bittery/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  bittery::RunOptions options;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* c = cmd->add_option("--config", args.config_path,
                            "experiment configuration (JSON)");
  if (config_required) c->required();
  cmd->add_option("--out", args.options.out_dir, "output directory");
  cmd->add_option("--jobs", args.options.jobs, "worker thread limit");
  cmd->add_option("--seed", args.options.seed, "seed for randomized tasks");
  cmd->add_option("--kT", args.options.kT, "temperature in energy units")
      ->default_val(1.0);
}

int run_config_task(const CommonArgs& args,
                    bittery::ExperimentConfig::Task expected) {
  const auto cfg = bittery::ExperimentConfig::load(args.config_path);
  if (cfg.task != expected)
    throw bittery::ConfigError(
        std::string("config task is \"") +
        bittery::ExperimentConfig::task_name(cfg.task) +
        "\" but the subcommand expects \"" +
        bittery::ExperimentConfig::task_name(expected) + "\"");
  return bittery::run_task(cfg, args.options, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-shot work extraction with informational storage"};
  app.require_subcommand(1);

  using Task = bittery::ExperimentConfig::Task;
  struct Sub {
    const char* name;
    const char* help;
    Task task;
  };
  const Sub subs[] = {
      {"maxwork", "maximum extractable work for one state", Task::Maxwork},
      {"sweep", "w_max over epsilon x scheme grid", Task::Sweep},
      {"landauer", "staircase reset protocol trace", Task::Landauer},
      {"addwork", "extra work from a dense weight window", Task::Addwork},
      {"ledger", "weight vs bittery bookkeeping table", Task::Ledger},
      {"oracle-verify", "exact brute-force check of k_star",
       Task::OracleVerify},
  };

  CommonArgs args[7];
  int idx = 0;
  for (const auto& sub : subs) {
    auto* cmd = app.add_subcommand(sub.name, sub.help);
    CommonArgs& a = args[idx];
    add_common(cmd, a, true);
    const Task task = sub.task;
    cmd->callback([&a, task] {
      const int status = run_config_task(a, task);
      if (status != 0) throw CLI::RuntimeError(status);
    });
    ++idx;
  }
  {
    auto* cmd = app.add_subcommand("verify-all",
                                   "run the full verification suite");
    CommonArgs& a = args[idx];
    add_common(cmd, a, false);
    cmd->callback([&a] {
      const int status =
          bittery::run_verify_all(a.options.seed, a.options.out_dir,
                                  std::cout);
      if (status != 0) throw CLI::RuntimeError(status);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const bittery::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const bittery::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
