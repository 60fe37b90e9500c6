#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "scenopt/wasserstein.hpp"

namespace scenopt {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

enum class DriftModel { A, B };

/// Bound on the W1 distance between the step-i and step-j generating laws.
///
/// Model A carries one scalar ρ for every pair; Model B carries ρ(i, j) with
/// ρ(i, i) = 0. Indices are 1-based, matching scenario numbering.
class DriftSpec {
 public:
  using RhoFn = std::function<double(std::size_t, std::size_t)>;

  static DriftSpec model_a(double rho);
  static DriftSpec model_b(RhoFn rho_fn);
  /// Model B with ρ(i, j) ≡ 0, i.e. a static environment.
  static DriftSpec none();

  DriftModel model() const { return model_; }
  /// Scalar ρ of a Model A spec.
  double rho() const { return rho_; }

  /// ρ(i, j). Model A returns ρ for i ≠ j and 0 on the diagonal.
  double rho(std::size_t i, std::size_t j) const;

  /// The same bound expressed as Model B, ρ(i, j) = ρ·[i ≠ j] for Model A.
  DriftSpec as_model_b() const;

 private:
  DriftModel model_ = DriftModel::A;
  double rho_ = 0.0;
  RhoFn rho_fn_;
};

/// Time-indexed family of normal laws ξ_i ~ N(μ_i, σ_i), i = 1..N+1.
///
/// The (N+1)-th law is the evaluation measure and is always materialized.
class GaussianDrift1D {
 public:
  using ParamFn = std::function<double(std::size_t)>;

  GaussianDrift1D(std::size_t n_steps, const ParamFn& mean_at, const ParamFn& std_at);
  /// From explicit per-step tables of length n_steps + 1 (index 0 is step 1).
  static GaussianDrift1D from_table(std::vector<double> means, std::vector<double> stddevs);

  /// μ_i = mean0 + mean_slope·i/N, σ_i = std0 + std_slope·i/N.
  static GaussianDrift1D linear(std::size_t n_steps, double mean0, double mean_slope,
                                double std0, double std_slope);
  /// The shifting rules μ_i = 0.2·i/N, σ_i = 1 + 0.2·i/N.
  static GaussianDrift1D paper_rules(std::size_t n_steps);
  static GaussianDrift1D stationary(std::size_t n_steps, double mean, double stddev);

  std::size_t n_steps() const { return means_.size() - 1; }
  std::size_t horizon() const { return means_.size(); }
  double mean_at(std::size_t i) const;
  double std_at(std::size_t i) const;
  Gaussian at(std::size_t i) const { return {mean_at(i), std_at(i)}; }
  Gaussian evaluation_law() const { return at(horizon()); }

 private:
  GaussianDrift1D(std::vector<double> means, std::vector<double> stddevs);
  std::vector<double> means_;
  std::vector<double> stddevs_;
};

/// Family of 2x2 random matrices with independent N(mean_ij(step), std²) entries.
class MatrixGaussianDrift {
 public:
  using MeanFn = std::function<Mat2(std::size_t)>;

  MatrixGaussianDrift(std::size_t n_steps, const MeanFn& mean_matrix_at, double entry_std);

  /// Constant mean, no drift.
  static MatrixGaussianDrift stationary(std::size_t n_steps, const Mat2& mean, double entry_std);
  /// Mean moves linearly from `start` (step 1) to start + rho·direction (step N+1),
  /// entries of `direction` in [-1, 1], so each entry drifts by at most rho.
  static MatrixGaussianDrift linear(std::size_t n_steps, const Mat2& start, const Mat2& direction,
                                    double rho, double entry_std);

  std::size_t n_steps() const { return means_.size() - 1; }
  std::size_t horizon() const { return means_.size(); }
  const Mat2& mean_matrix_at(std::size_t i) const;
  double entry_std() const { return entry_std_; }

  /// max over step pairs and entries of |mean_i − mean_j|; with a common
  /// entry std this is the per-entry W1 between steps.
  double max_entry_drift() const;
  /// Model A spec with ρ = max_entry_drift().
  DriftSpec drift_spec() const;

 private:
  std::vector<Mat2> means_;
  double entry_std_;
};

/// Ā of the quantized-input control benchmark.
Mat2 control_mean_matrix();

std::vector<double> sample_sequence(const GaussianDrift1D& family, std::size_t count,
                                    std::uint64_t seed);

/// Model B spec whose ρ(i, j) is the exact W1 between steps i and j.
DriftSpec drift_spec_of(const GaussianDrift1D& family);

std::vector<Mat2> sample_control_scenarios(const MatrixGaussianDrift& family, std::size_t count,
                                           std::uint64_t seed);

/// Preset families loaded from a key/value config. Keys:
///   family  = linear | stationary | table | paper_rules | mean_shift
///   n_steps = N
///   params  = comma separated numbers (meaning depends on family)
///   model   = A | B   (optional; A uses `rho` if given, else the max pairwise W1)
///   rho     = scalar bound for model A
struct DriftPreset {
  GaussianDrift1D family;
  DriftSpec spec;
};

DriftPreset load_drift_preset(const std::string& path);
DriftPreset drift_preset_from_text(const std::string& text);
/// Built-in presets by name: paper_rules, mean_shift, static.
DriftPreset named_drift_preset(const std::string& name, std::size_t n_steps);

}  // namespace scenopt
