#include "scenopt/violation.hpp"

#include <algorithm>
#include <cmath>

#include "scenopt/error.hpp"
#include "scenopt/kernels.hpp"
#include "scenopt/risk.hpp"
#include "scenopt/rng.hpp"

namespace scenopt {
namespace {

constexpr double kZ95 = 1.959963984540054;
// Samples per substream. Each chunk draws from its own stream, so the result
// does not depend on how chunks are scheduled.
constexpr std::size_t kChunk = 4096;

std::size_t count_interval_outside(double lo, double hi, const Gaussian& law, std::size_t n,
                                   const SeedSequence& seq) {
  std::vector<double> buf(kChunk);
  std::size_t bad = 0;
  for (std::size_t start = 0, chunk = 0; start < n; start += kChunk, ++chunk) {
    const std::size_t m = std::min(kChunk, n - start);
    auto engine = seq.stream(chunk);
    std::normal_distribution<double> z(0.0, 1.0);
    for (std::size_t j = 0; j < m; ++j) buf[j] = law.mean + law.stddev * z(engine);
    bad += kernels::count_outside(std::span<const double>(buf.data(), m), lo, hi);
  }
  return bad;
}

}  // namespace

double ViolationEstimate::standard_error() const {
  if (n_samples == 0) return 0.0;
  return std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(n_samples));
}

ViolationEstimate wilson_interval(std::size_t violations, std::size_t n_samples) {
  if (n_samples == 0) throw DomainError("violation estimate needs at least one sample");
  if (violations > n_samples) throw DomainError("more violations than samples");
  const double n = static_cast<double>(n_samples);
  const double p = static_cast<double>(violations) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double spread = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  ViolationEstimate e;
  e.estimate = p;
  // The bounds are exactly 0 and 1 at the endpoints; rounding would leave a residue.
  e.lower = violations == 0 ? 0.0 : std::max(0.0, center - spread);
  e.upper = violations == n_samples ? 1.0 : std::min(1.0, center + spread);
  e.half_width = (e.upper - e.lower) / 2.0;
  e.violations = violations;
  e.n_samples = n_samples;
  return e;
}

ViolationEstimate estimate_interval_violation(double lo, double hi, const Gaussian& law,
                                              std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw DomainError("violation estimate needs at least one sample");
  const auto bad = count_interval_outside(lo, hi, law, n_samples, SeedSequence(seed));
  return wilson_interval(bad, n_samples);
}

ViolationEstimate estimate_violation(const CoverSolution& solution, const Gaussian& law,
                                     std::size_t n_samples, std::uint64_t seed) {
  return estimate_interval_violation(solution.lower(), solution.upper(), law, n_samples, seed);
}

ViolationEstimate estimate_violation(const ControlInstance& instance,
                                     const ControlSolution& solution,
                                     const MatrixGaussianDrift& family, std::size_t n_samples,
                                     std::uint64_t seed) {
  if (n_samples == 0) throw DomainError("violation estimate needs at least one sample");
  if (solution.inputs.size() != instance.horizon) {
    throw DomainError("control solution length does not match the horizon");
  }
  const SeedSequence seq(seed);
  const Mat2& mean = family.mean_matrix_at(family.horizon());
  const double sd = family.entry_std();
  std::vector<Mat2> batch;
  std::vector<double> y0, y1;
  std::size_t bad = 0;
  for (std::size_t start = 0, chunk = 0; start < n_samples; start += kChunk, ++chunk) {
    const std::size_t m = std::min(kChunk, n_samples - start);
    auto engine = seq.stream(chunk);
    std::normal_distribution<double> z(0.0, 1.0);
    batch.assign(m, mean);
    if (sd > 0.0) {
      for (auto& a : batch) {
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) a(r, c) += sd * z(engine);
        }
      }
    }
    const auto tab = ControlTableau::build(instance, batch);
    tab.terminal_states(solution.inputs, y0, y1);
    bad += kernels::count_norm_exceeding(y0, y1, solution.objective);
  }
  return wilson_interval(bad, n_samples);
}

double interval_violation_exact(double lo, double hi, const Gaussian& law) {
  if (!(law.stddev > 0.0)) throw DomainError("standard deviation must be positive");
  // Sum the two tails separately so small violations keep their precision.
  const double below = normal_cdf(lo, law.mean, law.stddev);
  const double above = normal_cdf(-hi, -law.mean, law.stddev);
  return std::min(1.0, below + above);
}

CouplingCheck coupling_check(const GaussianDrift1D& family, const DriftSpec& drift, double lo,
                             double hi, std::size_t i, double r_i, std::size_t n_samples,
                             std::uint64_t seed) {
  if (n_samples == 0) throw DomainError("coupling check needs at least one sample");
  if (i == 0 || i > family.horizon()) {
    throw HorizonError("step " + std::to_string(i) + " outside 1.." +
                       std::to_string(family.horizon()));
  }
  const SeedSequence seq(seed);
  const double n = static_cast<double>(n_samples);
  const double out_i = static_cast<double>(
      count_interval_outside(lo, hi, family.at(i), n_samples, seq.split(0)));
  const double out_e = static_cast<double>(
      count_interval_outside(lo, hi, family.evaluation_law(), n_samples, seq.split(1)));

  CouplingCheck c;
  c.p_step = 1.0 - out_i / n;
  c.p_evaluation = 1.0 - out_e / n;
  c.slack = coupling_gap(drift, i, family.n_steps(), r_i);
  c.standard_error = std::sqrt(c.p_step * (1.0 - c.p_step) / n +
                               c.p_evaluation * (1.0 - c.p_evaluation) / n);
  c.vacuous = c.slack >= 1.0;
  c.passed = c.vacuous || c.p_step <= c.p_evaluation + c.slack + 3.0 * c.standard_error;
  return c;
}

}  // namespace scenopt
