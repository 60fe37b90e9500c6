#include "scenopt/risk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scenopt/error.hpp"

namespace scenopt {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
}

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
}

// Below this many subsets a per-k sum is enumerated, above it the
// elementary-symmetric recurrence is used. Both compute the same sum.
constexpr double kScheduleEnumerationLimit = 1e5;

std::vector<double> gaps_for(const DriftSpec& drift, std::size_t n, std::span<const double> radii) {
  if (radii.size() != 1 && radii.size() != n) {
    throw DomainError("radii must hold 1 or N = " + std::to_string(n) + " entries");
  }
  std::vector<double> gaps(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = radii.size() == 1 ? radii[0] : radii[i - 1];
    gaps[i - 1] = coupling_gap(drift, i, n, r);
  }
  return gaps;
}

}  // namespace

std::string_view to_string(CertificateSource s) {
  switch (s) {
    case CertificateSource::static_prop1: return "static_prop1";
    case CertificateSource::modelA_exp: return "modelA_exp";
    case CertificateSource::modelA_product: return "modelA_product";
    case CertificateSource::modelB_exact: return "modelB_exact";
    case CertificateSource::nonconvex_schedule: return "nonconvex_schedule";
  }
  return "unknown";
}

RiskCertificate static_beta(std::size_t n, std::size_t h, double epsilon) {
  if (h > n) throw DomainError("complexity h must not exceed N");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  RiskCertificate c;
  c.source = CertificateSource::static_prop1;
  c.query = {n, h, epsilon, {}, std::nullopt};
  if (n == h) {
    c.beta = 1.0;
  } else if (epsilon == 1.0) {
    c.beta = 0.0;
  } else {
    const long double log_beta =
        log_binomial_ld(n, h) + static_cast<long double>(n - h) * std::log1p(-epsilon);
    c.beta = static_cast<double>(std::exp(log_beta));
  }
  return c;
}

SampleSizes min_samples_static(double epsilon, double beta, std::size_t d) {
  check_epsilon(epsilon);
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0, 1]");
  if (d == 0) throw DomainError("d must be at least 1");
  SampleSizes out;
  const double dd = static_cast<double>(d);
  const double bound = 2.0 / epsilon * std::log(1.0 / beta) + 2.0 * dd +
                       2.0 * dd / epsilon * std::log(2.0 / epsilon);
  out.explicit_bound = static_cast<std::size_t>(std::ceil(bound));

  std::size_t n = d;
  while (static_beta(n, d, epsilon).beta > beta) ++n;
  out.prop1_bound = n;
  return out;
}

ModelACertificates modelA_beta(std::size_t n, std::size_t d, double epsilon, double rho,
                               double r_min) {
  if (!(r_min > 0.0)) throw DomainError("r_min must be positive");
  if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
  check_epsilon(epsilon);
  if (d > n) throw DomainError("d must not exceed N");

  const double gap = rho / r_min;
  const auto exponent = static_cast<long double>(n + 1 - d);
  const long double log_c = log_binomial_ld(n, d);
  const RiskQuery q{n, d, epsilon, {r_min}, DriftSpec::model_a(rho)};

  ModelACertificates out;
  out.vacuous = gap >= epsilon;
  out.product.source = CertificateSource::modelA_product;
  out.product.query = q;
  // log(1 − ε + gap) = log1p(gap − ε); base may exceed 1 in the vacuous regime.
  out.product.beta = static_cast<double>(
      std::exp(log_c + exponent * std::log1p(static_cast<long double>(gap) - epsilon)));
  out.exponential.source = CertificateSource::modelA_exp;
  out.exponential.query = q;
  out.exponential.beta = static_cast<double>(
      std::exp(log_c + exponent * (static_cast<long double>(gap) - epsilon)));
  return out;
}

double coupling_gap(const DriftSpec& drift, std::size_t i, std::size_t n_scenarios, double r_i) {
  if (!(r_i > 0.0)) throw DomainError("radius must be positive");
  if (drift.model() == DriftModel::A) return i == n_scenarios + 1 ? 0.0 : drift.rho() / r_i;
  return drift.rho(i, n_scenarios + 1) / r_i;
}

std::vector<double> survival_factors(double epsilon, std::span<const double> gaps) {
  std::vector<double> f(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    f[i] = std::clamp(1.0 - std::max(epsilon - gaps[i], 0.0), 0.0, 1.0);
  }
  return f;
}

RiskCertificate modelB_beta(std::size_t n, std::size_t d, double epsilon, const DriftSpec& drift,
                            std::span<const double> radii, const EnumerationOptions& options) {
  check_epsilon(epsilon);
  if (d > n) throw DomainError("d must not exceed N");
  const auto gaps = gaps_for(drift, n, radii);
  const auto factors = survival_factors(epsilon, gaps);
  RiskCertificate c;
  c.source = CertificateSource::modelB_exact;
  c.query = {n, d, epsilon, std::vector<double>(radii.begin(), radii.end()), drift};
  c.beta = complement_product_sum(factors, d, options);
  return c;
}

EpsilonSchedule epsilon_schedule_constant_r(std::size_t n, double beta, double rho, double r0) {
  check_beta(beta);
  if (!(r0 > 0.0)) throw DomainError("r0 must be positive");
  if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
  if (n == 0) throw DomainError("N must be positive");

  const double gap = rho / r0;
  EpsilonSchedule s;
  s.beta = beta;
  s.rho_over_r = {gap};
  s.values.resize(n + 1);
  s.clamped.assign(n + 1, 0);
  const long double log_target =
      std::log(static_cast<long double>(beta)) - std::log(static_cast<long double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    // 1 − t computed as −expm1(log t) keeps precision when t is close to 1.
    const long double log_t =
        (log_target - log_binomial_ld(n, k)) / static_cast<long double>(n - k);
    const double raw = static_cast<double>(gap - std::expm1(log_t));
    s.values[k] = std::clamp(raw, 0.0, 1.0);
    s.clamped[k] = raw != s.values[k];
  }
  s.values[n] = 1.0;
  return s;
}

double schedule_subset_sum(double epsilon, std::span<const double> gaps, std::size_t k) {
  const auto factors = survival_factors(epsilon, gaps);
  if (binomial(gaps.size(), k) <= kScheduleEnumerationLimit) {
    return complement_product_sum(factors, k);
  }
  return static_cast<double>(complement_product_sum_recurrence(factors, k));
}

ScheduleRoot epsilon_for_cardinality(std::span<const double> gaps, std::size_t k, double target) {
  const std::size_t n = gaps.size();
  if (k >= n) return {1.0, false};
  if (!(target > 0.0)) throw DomainError("schedule target must be positive");
  if (schedule_subset_sum(0.0, gaps, k) <= target) return {0.0, false};

  double lo = 0.0;
  double hi = 1.0 + *std::max_element(gaps.begin(), gaps.end());
  if (schedule_subset_sum(hi, gaps, k) > target) {
    // Cannot happen for k < N (all factors vanish at hi); flag rather than guess.
    return {1.0, true};
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (schedule_subset_sum(mid, gaps, k) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // hi is on the certified side: S_k(hi) ≤ target.
  if (hi > 1.0) return {1.0, true};
  return {hi, false};
}

EpsilonSchedule epsilon_schedule_general(std::size_t n, double beta, const DriftSpec& drift,
                                         std::span<const double> radii,
                                         std::span<const double> split) {
  check_beta(beta);
  if (n == 0) throw DomainError("N must be positive");
  if (!split.empty()) {
    if (split.size() != n) throw DomainError("split vector must have N entries (k = 0..N-1)");
    CompensatedSum total;
    for (double v : split) {
      if (!(v > 0.0)) throw DomainError("split entries must be positive");
      total.add(v);
    }
    if (std::abs(total.value() - beta) > 1e-12 * beta) {
      throw DomainError("split entries must sum to beta");
    }
  }
  const auto gaps = gaps_for(drift, n, radii);

  EpsilonSchedule s;
  s.beta = beta;
  s.rho_over_r = gaps;
  s.values.resize(n + 1);
  s.clamped.assign(n + 1, 0);
  const double even = beta / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto root = epsilon_for_cardinality(gaps, k, split.empty() ? even : split[k]);
    s.values[k] = root.epsilon;
    s.clamped[k] = root.clamped;
  }
  s.values[n] = 1.0;
  return s;
}

}  // namespace scenopt
