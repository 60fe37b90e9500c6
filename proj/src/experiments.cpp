#include "scenopt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "scenopt/drift.hpp"
#include "scenopt/error.hpp"
#include "scenopt/rng.hpp"
#include "scenopt/violation.hpp"
#include "scenopt/wasserstein.hpp"

namespace scenopt {
namespace {

void check_keys(const KeyValueConfig& params, std::initializer_list<const char*> allowed,
                const std::string& experiment) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : params.values()) {
    if (!ok.count(key)) {
      std::string list;
      for (const auto& k : ok) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError("unknown parameter '" + key + "' for " + experiment + " (known: " + list +
                        ")");
    }
  }
}

std::size_t get_count(const KeyValueConfig& p, const std::string& key, std::int64_t fallback,
                      std::int64_t minimum = 1) {
  const auto v = p.get_int(key, fallback);
  if (v < minimum) {
    throw ConfigError("parameter " + key + " must be >= " + std::to_string(minimum));
  }
  return static_cast<std::size_t>(v);
}

double get_probability(const KeyValueConfig& p, const std::string& key, double fallback) {
  const double v = p.get_double(key, fallback);
  if (!(v > 0.0 && v < 1.0)) throw ConfigError("parameter " + key + " must lie in (0, 1)");
  return v;
}

std::vector<double> get_positive_list(const KeyValueConfig& p, const std::string& key,
                                      std::vector<double> fallback, bool allow_zero = false) {
  auto v = p.get_doubles(key, std::move(fallback));
  if (v.empty()) throw ConfigError("parameter " + key + " must not be empty");
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0 || (!allow_zero && x == 0.0)) {
      throw ConfigError("parameter " + key + " must hold " +
                        (allow_zero ? "nonnegative" : "positive") + " numbers");
    }
  }
  return v;
}

DriftPreset get_preset(const KeyValueConfig& p, std::size_t n) {
  if (p.has("preset_file")) {
    if (p.has("preset")) throw ConfigError("give either preset or preset_file, not both");
    auto preset = load_drift_preset(p.require_string("preset_file"));
    if (preset.family.n_steps() != n) {
      throw ConfigError("preset file defines " + std::to_string(preset.family.n_steps()) +
                        " steps but N = " + std::to_string(n));
    }
    return preset;
  }
  return named_drift_preset(p.get_string("preset", "paper_rules"), n);
}

CsvTable make_table(const std::string& schema, const ExperimentConfig& config,
                    std::vector<std::string> header) {
  CsvTable t;
  t.schema = schema;
  t.preamble.push_back("seed=" + std::to_string(config.seed));
  for (const auto& [key, value] : config.params.values()) t.preamble.push_back(key + "=" + value);
  t.header = std::move(header);
  return t;
}

std::string fmt(double x) { return format_double(x); }
std::string fmt(std::size_t x) { return std::to_string(x); }

std::string join(const std::vector<double>& v, char sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += sep;
    s += fmt(v[k]);
  }
  return s;
}

}  // namespace

std::string CsvTable::render() const {
  std::ostringstream out;
  out << "# scenopt " << schema << '\n';
  for (const auto& line : preamble) out << "# " << line << '\n';
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
  for (const auto& line : notes) out << "# " << line << '\n';
  return out.str();
}

// --- cover ------------------------------------------------------------------

CoverResult run_cover_experiment(const ExperimentConfig& config) {
  const auto& p = config.params;
  check_keys(p, {"N", "epsilon", "d", "r0", "preset", "preset_file"}, "cover");
  const std::size_t n = get_count(p, "N", 309);
  const double eps = get_probability(p, "epsilon", 0.1);
  const std::size_t d = get_count(p, "d", 2);
  if (d > n) throw ConfigError("d must not exceed N");
  const auto radii = get_positive_list(p, "r0", {1.8, 2.0, 2.2, 2.4});
  const auto preset = get_preset(p, n);

  auto draws = sample_sequence(preset.family, n, config.seed);
  const auto nominal = CoverScenarios::nominal(draws);
  const auto static_sol = solve_cover(nominal);
  const double beta_static = static_beta(n, d, eps).beta;

  CoverResult result;
  result.draws = draws;
  result.table = make_table("cover v1", config,
                            {"r0", "gamma_static", "gamma_robust", "beta_modelB", "beta_static",
                             "binding_low", "binding_high", "same_binding"});
  for (double r0 : radii) {
    const auto robust = solve_cover(CoverScenarios::with_radius(draws, r0));
    CoverRow row;
    row.r0 = r0;
    row.gamma_static = static_sol.half_width;
    row.gamma_robust = robust.half_width;
    const double r[] = {r0};
    row.beta_modelB = modelB_beta(n, d, eps, preset.spec, r).beta;
    row.beta_static = beta_static;
    row.binding_low = robust.binding_low;
    row.binding_high = robust.binding_high;
    row.same_binding = robust.binding_low == static_sol.binding_low &&
                       robust.binding_high == static_sol.binding_high;
    result.rows.push_back(row);
    result.table.rows.push_back({fmt(row.r0), fmt(row.gamma_static), fmt(row.gamma_robust),
                                 fmt(row.beta_modelB), fmt(row.beta_static),
                                 fmt(row.binding_low + 1), fmt(row.binding_high + 1),
                                 row.same_binding ? "1" : "0"});
  }
  return result;
}

// --- control ----------------------------------------------------------------

ControlResult run_control_experiment(const ExperimentConfig& config) {
  const auto& p = config.params;
  check_keys(p,
             {"N", "horizon", "inputs", "entry_std", "sample_rho", "strategy", "beta", "rho", "r0",
              "mc_samples", "solve"},
             "control");
  ControlResult result;
  const std::size_t n = get_count(p, "N", 1000);
  const double beta = get_probability(p, "beta", 1e-2);
  const auto rhos = get_positive_list(p, "rho", {0.0, 0.02, 0.1}, true);
  const auto r0s = get_positive_list(p, "r0", {2.0});
  const bool solve = p.get_int("solve", 1) != 0;
  result.n_scenarios = n;

  if (solve) {
    ControlInstance instance;
    instance.horizon = get_count(p, "horizon", 8);
    instance.inputs = p.get_doubles("inputs", ControlInstance::default_inputs());
    std::sort(instance.inputs.begin(), instance.inputs.end());
    const double entry_std = p.get_double("entry_std", 0.02);
    const double sample_rho = p.get_double("sample_rho", 0.0);
    if (!(entry_std >= 0.0) || !(sample_rho >= 0.0)) {
      throw ConfigError("entry_std and sample_rho must be nonnegative");
    }
    const std::string strategy = p.get_string("strategy", "auto");
    ControlOptions options;
    const double leaves = std::pow(static_cast<double>(instance.inputs.size()),
                                   static_cast<double>(instance.horizon));
    if (strategy == "auto") {
      result.strategy = leaves <= options.exhaustive_guard ? ControlStrategy::exhaustive
                                                           : ControlStrategy::branch_and_bound;
    } else if (strategy == "exhaustive") {
      result.strategy = ControlStrategy::exhaustive;
    } else if (strategy == "branch_and_bound") {
      result.strategy = ControlStrategy::branch_and_bound;
    } else {
      throw ConfigError("strategy must be auto, exhaustive or branch_and_bound");
    }

    Mat2 direction = Mat2::Ones();
    const auto family = MatrixGaussianDrift::linear(n, control_mean_matrix(), direction,
                                                    sample_rho, entry_std);
    instance.scenarios = sample_control_scenarios(family, n, config.seed);
    instance.validate();
    result.scenarios = instance.scenarios;
    auto analysis = analyze_control(instance, result.strategy, options);
    result.solution = std::move(analysis.solution);
    result.invariant = std::move(analysis.invariant);
    const std::size_t mc = get_count(p, "mc_samples", 10000, 0);
    if (mc > 0) {
      const auto mc_seed = SeedSequence(config.seed).split(1).stream(0)();
      result.violation =
          estimate_violation(instance, result.solution, family, mc, mc_seed).estimate;
    }
  }

  result.table = make_table("control v1", config,
                            {"rho", "r0", "k", "epsilon", "clamped", "realized"});
  for (double rho : rhos) {
    for (double r0 : r0s) {
      ControlCurve curve{rho, r0, epsilon_schedule_constant_r(n, beta, rho, r0)};
      for (std::size_t k = 0; k <= n; ++k) {
        const bool realized = solve && k == result.invariant.cardinality();
        result.table.rows.push_back({fmt(rho), fmt(r0), fmt(k), fmt(curve.schedule.at(k)),
                                     curve.schedule.clamped[k] ? "1" : "0",
                                     realized ? "1" : "0"});
      }
      result.curves.push_back(std::move(curve));
    }
  }
  if (solve) {
    auto& notes = result.table.notes;
    notes.push_back(std::string("strategy=") +
                    (result.strategy == ControlStrategy::exhaustive ? "exhaustive"
                                                                    : "branch_and_bound"));
    notes.push_back("objective=" + fmt(result.solution.objective));
    notes.push_back("inputs=" + join(result.solution.inputs, ';'));
    notes.push_back("invariant_k=" + fmt(result.invariant.cardinality()));
    std::string idx;
    for (std::size_t i : result.invariant.indices) idx += (idx.empty() ? "" : ";") + fmt(i + 1);
    notes.push_back("invariant=" + idx);
    if (result.violation) notes.push_back("violation_estimate=" + fmt(*result.violation));
  }
  return result;
}

// --- validation -------------------------------------------------------------

ValidationResult run_validation(const ExperimentConfig& config) {
  const auto& p = config.params;
  check_keys(p,
             {"N", "epsilon", "beta", "d", "r0", "preset", "preset_file", "repetitions",
              "mc_samples", "threads"},
             "validate");
  ValidationResult result;
  const double eps = get_probability(p, "epsilon", 0.1);
  const std::size_t d = get_count(p, "d", 2);
  const std::string n_text = p.get_string("N", "309");
  std::size_t n = 0;
  if (n_text == "explicit" || n_text == "prop1") {
    const auto sizes = min_samples_static(eps, get_probability(p, "beta", 1e-4), d);
    n = n_text == "explicit" ? sizes.explicit_bound : sizes.prop1_bound;
  } else {
    n = get_count(p, "N", 309);
  }
  if (d > n) throw ConfigError("d must not exceed N");
  const double r0 = p.get_double("r0", 2.0);
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw ConfigError("r0 must be finite and >= 0");
  const std::size_t reps = get_count(p, "repetitions", 500);
  if (reps < 100) throw ConfigError("validation needs at least 100 repetitions");
  const std::size_t mc = get_count(p, "mc_samples", 10000);
  const std::size_t threads = get_count(p, "threads", 1);
  const auto preset = get_preset(p, n);

  result.n_scenarios = n;
  result.epsilon = eps;
  if (r0 > 0.0) {
    const double r[] = {r0};
    result.beta = modelB_beta(n, d, eps, preset.spec, r).beta;
    result.source = CertificateSource::modelB_exact;
  } else {
    for (std::size_t i = 1; i <= n; ++i) {
      if (preset.spec.rho(i, n + 1) != 0.0) {
        throw ConfigError("r0 = 0 is only certified for a drift-free preset (preset = static)");
      }
    }
    result.beta = static_beta(n, d, eps).beta;
    result.source = CertificateSource::static_prop1;
  }

  result.rows.resize(reps);
  const SeedSequence root(config.seed);
  const Gaussian law = preset.family.evaluation_law();
  auto run_one = [&](std::size_t rep) {
    const SeedSequence seq = root.split(rep);
    const auto draws = sample_sequence(preset.family, n, seq.stream(0)());
    const auto sol = solve_cover(CoverScenarios::with_radius(draws, r0));
    ValidationRow row;
    row.repetition = rep + 1;
    row.v_hat = estimate_violation(sol, law, mc, seq.stream(1)()).estimate;
    row.v_exact = interval_violation_exact(sol.lower(), sol.upper(), law);
    row.exceeded = row.v_hat > eps;
    result.rows[rep] = row;
  };
  if (threads <= 1) {
    for (std::size_t rep = 0; rep < reps; ++rep) run_one(rep);
  } else {
    // Each repetition owns its substreams and output slot, so the split
    // across threads does not affect the result.
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t rep = t; rep < reps; rep += threads) run_one(rep);
      });
    }
  }

  std::size_t exceeded = 0;
  for (const auto& row : result.rows) exceeded += row.exceeded ? 1 : 0;
  result.exceed_rate = static_cast<double>(exceeded) / static_cast<double>(reps);
  result.vacuous = !(result.beta < 1.0);
  const double b = std::min(result.beta, 1.0);
  result.allowed_rate = b + 3.0 * std::sqrt(b * (1.0 - b) / static_cast<double>(reps));
  result.passed = result.vacuous || result.exceed_rate <= result.allowed_rate;

  result.table = make_table("validate v1", config, {"repetition", "v_hat", "v_exact", "exceeded"});
  for (const auto& row : result.rows) {
    result.table.rows.push_back(
        {fmt(row.repetition), fmt(row.v_hat), fmt(row.v_exact), row.exceeded ? "1" : "0"});
  }
  auto& notes = result.table.notes;
  notes.push_back("N=" + fmt(n));
  notes.push_back(std::string("certificate=") + std::string(to_string(result.source)));
  notes.push_back("beta=" + fmt(result.beta));
  notes.push_back("exceed_rate=" + fmt(result.exceed_rate));
  notes.push_back("allowed_rate=" + fmt(result.allowed_rate));
  notes.push_back(std::string("vacuous=") + (result.vacuous ? "1" : "0"));
  notes.push_back(std::string("passed=") + (result.passed ? "1" : "0"));
  return result;
}

// --- curves -----------------------------------------------------------------

WassersteinResult run_wasserstein_curve(const ExperimentConfig& config) {
  const auto& p = config.params;
  check_keys(p, {"N", "preset", "preset_file", "tol"}, "wasserstein");
  const std::size_t n = get_count(p, "N", 309);
  const double tol = p.get_double("tol", 1e-9);
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  const auto preset = get_preset(p, n);
  const auto& f = preset.family;
  const Gaussian last = f.evaluation_law();

  WassersteinResult result;
  result.table = make_table("wasserstein v1", config, {"i", "w1_exact", "w1_quadrature", "mean_gap"});
  for (std::size_t i = 1; i <= f.horizon(); ++i) {
    WassersteinRow row;
    row.i = i;
    row.exact = w1_gaussian(f.at(i), last);
    row.quadrature = w1_cdf_integral(Dist1D(f.at(i)), Dist1D(last), tol);
    row.mean_gap = std::fabs(f.mean_at(i) - last.mean);
    result.rows.push_back(row);
    result.table.rows.push_back({fmt(i), fmt(row.exact), fmt(row.quadrature), fmt(row.mean_gap)});
  }
  return result;
}

BoundsResult run_bounds_curve(const ExperimentConfig& config) {
  const auto& p = config.params;
  check_keys(p,
             {"N", "d", "epsilon", "beta", "preset", "preset_file", "r0_grid", "epsilon_grid"},
             "bounds");
  const std::size_t n = get_count(p, "N", 309);
  const std::size_t d = get_count(p, "d", 2);
  if (d > n) throw ConfigError("d must not exceed N");
  const double eps = get_probability(p, "epsilon", 0.1);
  const double beta = get_probability(p, "beta", 1e-4);
  const auto r0_grid = get_positive_list(p, "r0_grid", {1.8, 1.9, 2.0, 2.1, 2.2, 2.3, 2.4});
  const auto eps_grid =
      get_positive_list(p, "epsilon_grid", {0.01, 0.02, 0.05, 0.1, 0.15, 0.2});
  for (double e : eps_grid) {
    if (!(e < 1.0)) throw ConfigError("epsilon_grid values must lie in (0, 1)");
  }
  const auto preset = get_preset(p, n);
  const auto none = DriftSpec::none();

  BoundsResult result;
  result.table = make_table("bounds v1", config,
                            {"sweep", "x", "beta_drift", "beta_rho0", "n_explicit", "n_prop1"});
  for (double r0 : r0_grid) {
    const double r[] = {r0};
    BoundsRow row;
    row.sweep = "r0";
    row.x = r0;
    row.beta_drift = modelB_beta(n, d, eps, preset.spec, r).beta;
    row.beta_rho0 = modelB_beta(n, d, eps, none, r).beta;
    result.rows.push_back(row);
    result.table.rows.push_back({"r0", fmt(r0), fmt(row.beta_drift), fmt(row.beta_rho0), "", ""});
  }
  for (double e : eps_grid) {
    const auto sizes = min_samples_static(e, beta, d);
    BoundsRow row;
    row.sweep = "epsilon";
    row.x = e;
    row.n_explicit = sizes.explicit_bound;
    row.n_prop1 = sizes.prop1_bound;
    result.rows.push_back(row);
    result.table.rows.push_back(
        {"epsilon", fmt(e), "", "", fmt(row.n_explicit), fmt(row.n_prop1)});
  }
  return result;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  const auto& e = config.experiment;
  if (e == "cover") return {run_cover_experiment(config).table, false};
  if (e == "control") return {run_control_experiment(config).table, false};
  if (e == "wasserstein") return {run_wasserstein_curve(config).table, false};
  if (e == "bounds") return {run_bounds_curve(config).table, false};
  if (e == "validate") {
    auto r = run_validation(config);
    return {std::move(r.table), !r.passed};
  }
  throw ConfigError("unknown experiment '" + e + "'");
}

}  // namespace scenopt
