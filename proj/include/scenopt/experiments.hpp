#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scenopt/config.hpp"
#include "scenopt/control.hpp"
#include "scenopt/cover.hpp"
#include "scenopt/risk.hpp"

namespace scenopt {

/// One experiment run. Output depends only on these three fields.
struct ExperimentConfig {
  std::string experiment;  // cover | control | wasserstein | bounds | validate
  std::uint64_t seed = 0;
  KeyValueConfig params;
};

/// CSV with a versioned schema line and the effective parameters as leading
/// comments, then a header row, data rows, and trailing `#` note lines.
struct CsvTable {
  std::string schema;
  std::vector<std::string> preamble;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;

  std::string render() const;
};

// --- cover ------------------------------------------------------------------

struct CoverRow {
  double r0 = 0.0;
  double gamma_static = 0.0;
  double gamma_robust = 0.0;
  double beta_modelB = 0.0;
  double beta_static = 0.0;
  std::size_t binding_low = 0;  // 0-based, robust problem
  std::size_t binding_high = 0;
  bool same_binding = false;  // static and robust problems bind at the same scenarios
};

struct CoverResult {
  std::vector<double> draws;  // η_1..η_N shared by every row
  std::vector<CoverRow> rows;
  CsvTable table;
};

/// Keys: N (309), epsilon (0.1), d (2), r0 (1.8,2,2.2,2.4), preset
/// (paper_rules) or preset_file. One scenario draw is shared by every r0.
CoverResult run_cover_experiment(const ExperimentConfig& config);

// --- control ----------------------------------------------------------------

struct ControlCurve {
  double rho = 0.0;
  double r0 = 0.0;
  EpsilonSchedule schedule;
};

struct ControlResult {
  std::size_t n_scenarios = 0;
  std::vector<Mat2> scenarios;  // empty when solve = 0
  ControlStrategy strategy = ControlStrategy::branch_and_bound;
  ControlSolution solution;
  InvariantSet invariant;
  std::optional<double> violation;  // Monte Carlo estimate under the (N+1)-th law
  std::vector<ControlCurve> curves;
  CsvTable table;
};

/// Keys: N (1000), horizon (8), inputs (-5..5), entry_std (0.02), sample_rho
/// (0), strategy (auto), beta (0.01), rho (0,0.02,0.1), r0 (2), mc_samples
/// (10000, 0 disables), solve (1; 0 emits schedules only).
ControlResult run_control_experiment(const ExperimentConfig& config);

// --- validation -------------------------------------------------------------

struct ValidationRow {
  std::size_t repetition = 0;
  double v_hat = 0.0;
  double v_exact = 0.0;
  bool exceeded = false;
};

struct ValidationResult {
  std::size_t n_scenarios = 0;
  double epsilon = 0.0;
  double beta = 0.0;
  CertificateSource source = CertificateSource::modelB_exact;
  std::vector<ValidationRow> rows;
  double exceed_rate = 0.0;
  double allowed_rate = 0.0;  // β + 3·sqrt(β(1−β)/R)
  bool vacuous = false;
  bool passed = false;
  CsvTable table;
};

/// Keys: N (309, or explicit / prop1 to derive it from epsilon, beta, d),
/// epsilon (0.1), beta (1e-4, only used to derive N), d (2), r0 (2),
/// preset (paper_rules), repetitions (500), mc_samples (10000), threads (1).
ValidationResult run_validation(const ExperimentConfig& config);

// --- curves -----------------------------------------------------------------

struct WassersteinRow {
  std::size_t i = 0;
  double exact = 0.0;
  double quadrature = 0.0;
  double mean_gap = 0.0;
};

struct WassersteinResult {
  std::vector<WassersteinRow> rows;
  CsvTable table;
};

/// Keys: N (309), preset (paper_rules), tol (1e-9).
WassersteinResult run_wasserstein_curve(const ExperimentConfig& config);

struct BoundsRow {
  std::string sweep;  // r0 | epsilon
  double x = 0.0;
  double beta_drift = 0.0;  // r0 sweep
  double beta_rho0 = 0.0;   // r0 sweep
  std::size_t n_explicit = 0;  // epsilon sweep
  std::size_t n_prop1 = 0;     // epsilon sweep
};

struct BoundsResult {
  std::vector<BoundsRow> rows;
  CsvTable table;
};

/// Keys: N (309), d (2), epsilon (0.1), beta (1e-4), preset (paper_rules),
/// r0_grid (1.8,1.9,...,2.4), epsilon_grid (0.01,0.02,0.05,0.1,0.15,0.2).
BoundsResult run_bounds_curve(const ExperimentConfig& config);

/// Dispatch on config.experiment. `failed` is set when a validation run fails.
struct ExperimentOutput {
  CsvTable table;
  bool failed = false;
};
ExperimentOutput run_experiment(const ExperimentConfig& config);

}  // namespace scenopt
