#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scenopt/drift.hpp"
#include "scenopt/subset_sum.hpp"

namespace scenopt {

/// Inputs of a violation certificate.
///
/// `complexity` is the number of decision-determining scenarios: Helly's
/// dimension h for the static bound, d for the drift bounds, and the
/// invariant-set cardinality k for non-convex schedules. The two symbols
/// denote the same quantity for the convex problems handled here.
struct RiskQuery {
  std::size_t n_scenarios = 0;
  std::size_t complexity = 0;
  double epsilon = 0.0;
  std::vector<double> radii;  // r_1..r_N, or a single r_0
  std::optional<DriftSpec> drift;
};

enum class CertificateSource { static_prop1, modelA_exp, modelA_product, modelB_exact, nonconvex_schedule };

std::string_view to_string(CertificateSource s);

struct RiskCertificate {
  double beta = 0.0;
  CertificateSource source = CertificateSource::static_prop1;
  RiskQuery query;

  /// β ≥ 1 says nothing; such certificates are returned, never rejected.
  bool vacuous() const { return !(beta < 1.0); }
};

/// β = C(N,h)·(1−ε)^{N−h} for the non-robust scenario problem.
RiskCertificate static_beta(std::size_t n, std::size_t h, double epsilon);

struct SampleSizes {
  /// Smallest N ≥ (2/ε)ln(1/β) + 2d + (2d/ε)ln(2/ε).
  std::size_t explicit_bound = 0;
  /// Smallest N with static_beta(N, d, ε) ≤ β.
  std::size_t prop1_bound = 0;
};

SampleSizes min_samples_static(double epsilon, double beta, std::size_t d);

struct ModelACertificates {
  RiskCertificate product;      // C(N,d)·(1 − ε + ρ/r_min)^{N+1−d}
  RiskCertificate exponential;  // C(N,d)·exp((ρ/r_min − ε)(N+1−d))
  /// ρ/r_min ≥ ε: the coupling slack swallows the risk level.
  bool vacuous = false;
};

ModelACertificates modelA_beta(std::size_t n, std::size_t d, double epsilon, double rho,
                               double r_min);

/// Σ_{|I| = d} Π_{i ∉ I} (1 − (ε − ρ(i, N+1)/r_i)_+), exact enumeration.
/// `radii` holds r_1..r_N or a single constant radius.
RiskCertificate modelB_beta(std::size_t n, std::size_t d, double epsilon, const DriftSpec& drift,
                            std::span<const double> radii, const EnumerationOptions& options = {});

/// ρ/r_i for Model A, ρ(i, N+1)/r_i for Model B (0 when i = N+1).
double coupling_gap(const DriftSpec& drift, std::size_t i, std::size_t n_scenarios, double r_i);

/// Per-scenario factors 1 − (ε − gap_i)_+, clamped into [0, 1].
std::vector<double> survival_factors(double epsilon, std::span<const double> gaps);

struct EpsilonSchedule {
  std::vector<double> values;        // ε(0)..ε(N)
  std::vector<std::uint8_t> clamped;  // 1 where the raw value left [0, 1]
  double beta = 0.0;
  std::vector<double> rho_over_r;  // one entry (constant) or N entries

  std::size_t n() const { return values.size() - 1; }
  double at(std::size_t k) const { return values.at(k); }
};

/// Even split of β with constant radius r0:
/// ε(k) = 1 + ρ/r0 − (β / (N·C(N,k)))^{1/(N−k)}, ε(N) = 1.
EpsilonSchedule epsilon_schedule_constant_r(std::size_t n, double beta, double rho, double r0);

/// ε(k) solving S_k(ε) = target_k where S_k is the sum over k-subsets of the
/// complement products of the survival factors. Monotone bisection on
/// [0, 1 + max gap] to 1e-10. Without `split`, target_k = β/N.
EpsilonSchedule epsilon_schedule_general(std::size_t n, double beta, const DriftSpec& drift,
                                         std::span<const double> radii,
                                         std::span<const double> split = {});

/// Subset sum S_k(ε) for the given per-scenario gaps ρ_i/r_i.
double schedule_subset_sum(double epsilon, std::span<const double> gaps, std::size_t k);

/// Root of S_k(ε) = target for a single k. ε = 0 when S_k(0) ≤ target;
/// roots above 1 are clamped to 1 and flagged.
struct ScheduleRoot {
  double epsilon = 0.0;
  bool clamped = false;
};
ScheduleRoot epsilon_for_cardinality(std::span<const double> gaps, std::size_t k, double target);

}  // namespace scenopt
