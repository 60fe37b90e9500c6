// scenopt: run the scenario-approach experiments and write CSV.
//
//   scenopt <cover|control|wasserstein|bounds|validate> [--seed S]
//           [--config FILE] [--out FILE] [--set key=value]... [--<key> value]...
//
// Exit codes: 0 success, 2 bad configuration, 3 capacity guard hit,
// 4 validation failed, 1 anything else.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "scenopt/config.hpp"
#include "scenopt/error.hpp"
#include "scenopt/experiments.hpp"
#include "scenopt/scenario_io.hpp"

namespace {

constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitValidation = 4;

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<const char*> keys;
};

const std::vector<Subcommand> kSubcommands = {
    {"cover", "robust interval covering: gamma and beta per r0",
     {"N", "epsilon", "d", "r0", "preset", "preset_file"}},
    {"control", "quantized-input control: solution, invariant set, eps(k) schedules",
     {"N", "horizon", "inputs", "entry_std", "sample_rho", "strategy", "beta", "rho", "r0",
      "mc_samples", "solve"}},
    {"wasserstein", "W1 between each step law and the evaluation law",
     {"N", "preset", "preset_file", "tol"}},
    {"bounds", "beta over an r0 grid and sample sizes over an epsilon grid",
     {"N", "d", "epsilon", "beta", "preset", "preset_file", "r0_grid", "epsilon_grid"}},
    {"validate", "Monte Carlo check of the covering certificate",
     {"N", "epsilon", "beta", "d", "r0", "preset", "preset_file", "repetitions", "mc_samples",
      "threads"}},
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw scenopt::ConfigError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw scenopt::ConfigError("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario approach experiments with drifting distributions"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string config_path;
  std::string out_path;
  std::vector<std::string> sets;
  std::string scenarios_out;
  std::string solution_out;
  std::map<std::string, std::map<std::string, std::string>> direct;

  for (const auto& sc : kSubcommands) {
    auto* sub = app.add_subcommand(sc.name, sc.help);
    sub->add_option("--seed", seed, "random seed")->capture_default_str();
    sub->add_option("--config", config_path, "key = value parameter file");
    sub->add_option("--out", out_path, "CSV output path (default stdout)");
    sub->add_option("-p,--set", sets, "parameter override key=value (repeatable)");
    for (const char* key : sc.keys) {
      sub->add_option_function<std::string>(
          std::string("--") + key,
          [&direct, name = sc.name, key](const std::string& v) { direct[name][key] = v; },
          std::string("override parameter ") + key);
    }
    if (std::string(sc.name) == "cover" || std::string(sc.name) == "control") {
      sub->add_option("--scenarios-out", scenarios_out, "write the drawn scenarios (first r0)");
      sub->add_option("--solution-out", solution_out,
                      "write the solution and invariant set (first r0)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    scenopt::ExperimentConfig config;
    config.experiment = app.get_subcommands().front()->get_name();
    config.seed = seed;
    if (!config_path.empty()) config.params = scenopt::KeyValueConfig::load(config_path);
    for (const auto& [key, value] : direct[config.experiment]) config.params.set(key, value);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw scenopt::ConfigError("--set expects key=value, got '" + kv + "'");
      }
      config.params.set(kv.substr(0, eq), kv.substr(eq + 1));
    }

    std::string csv;
    bool failed = false;
    if (config.experiment == "cover") {
      auto r = scenopt::run_cover_experiment(config);
      csv = r.table.render();
      const double r0 = r.rows.front().r0;
      const auto set = scenopt::CoverScenarios::with_radius(r.draws, r0);
      if (!scenarios_out.empty()) {
        std::ofstream f(scenarios_out);
        scenopt::write_cover_scenarios(f, set);
      }
      if (!solution_out.empty()) {
        std::ofstream f(solution_out);
        scenopt::write_cover_solution(f, scenopt::solve_cover(set),
                                      scenopt::invariant_set_cover(set));
      }
    } else if (config.experiment == "control") {
      auto r = scenopt::run_control_experiment(config);
      csv = r.table.render();
      if (!scenarios_out.empty() && !r.scenarios.empty()) {
        std::ofstream f(scenarios_out);
        scenopt::write_control_scenarios(
            f, scenopt::ControlScenarios::with_radius(r.scenarios, r.curves.front().r0));
      }
      if (!solution_out.empty() && !r.scenarios.empty()) {
        std::ofstream f(solution_out);
        scenopt::write_control_solution(f, r.solution, r.invariant);
      }
    } else {
      auto r = scenopt::run_experiment(config);
      csv = r.table.render();
      failed = r.failed;
    }

    if (out_path.empty()) {
      std::cout << csv;
    } else {
      write_file(out_path, csv);
    }
    if (failed) {
      std::cerr << "validation failed: exceedance rate above the certified bound\n";
      return kExitValidation;
    }
    return 0;
  } catch (const scenopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const scenopt::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
}
