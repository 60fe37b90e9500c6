#pragma once

#include <cstdint>

#include "scenopt/control.hpp"
#include "scenopt/cover.hpp"
#include "scenopt/drift.hpp"
#include "scenopt/wasserstein.hpp"

namespace scenopt {

/// Monte Carlo violation frequency with a 95% Wilson score interval.
struct ViolationEstimate {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double half_width = 0.0;  // (upper − lower) / 2
  std::size_t violations = 0;
  std::size_t n_samples = 0;

  /// Binomial standard error sqrt(p(1−p)/n) at the point estimate.
  double standard_error() const;
};

ViolationEstimate wilson_interval(std::size_t violations, std::size_t n_samples);

/// P(ξ ∉ [lo, hi]) for ξ ~ law, estimated from n_samples draws.
ViolationEstimate estimate_interval_violation(double lo, double hi, const Gaussian& law,
                                              std::size_t n_samples, std::uint64_t seed);

/// Covering decision evaluated under `law` (normally the family's (N+1)-th law).
ViolationEstimate estimate_violation(const CoverSolution& solution, const Gaussian& law,
                                     std::size_t n_samples, std::uint64_t seed);

/// Control decision evaluated under the family's (N+1)-th matrix law: a
/// sample violates when ‖A^T x0 + R u‖_∞ > h. Only the horizon, x0 and b of
/// `instance` are used.
ViolationEstimate estimate_violation(const ControlInstance& instance,
                                     const ControlSolution& solution,
                                     const MatrixGaussianDrift& family, std::size_t n_samples,
                                     std::uint64_t seed);

/// P(ξ ∉ [lo, hi]) exactly, from the normal CDF.
double interval_violation_exact(double lo, double hi, const Gaussian& law);

struct CouplingCheck {
  double p_step = 0.0;        // P_i(region)
  double p_evaluation = 0.0;  // P_{N+1}(region)
  double slack = 0.0;         // ρ(i, N+1) / r_i
  double standard_error = 0.0;
  bool passed = false;
  bool vacuous = false;  // slack ≥ 1
};

/// Monte Carlo check of P_i(region) ≤ P_{N+1}(region) + ρ(i, N+1)/r_i for
/// the interval region [lo, hi], with 3 combined standard errors of margin.
/// `i` is 1-based and may equal N+1.
CouplingCheck coupling_check(const GaussianDrift1D& family, const DriftSpec& drift, double lo,
                             double hi, std::size_t i, double r_i, std::size_t n_samples,
                             std::uint64_t seed);

}  // namespace scenopt
