#pragma once

#include <cstdint>
#include <span>

namespace scenopt {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  void add(const CompensatedSum& other);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

/// ln C(n, k) via log-gamma.
double log_binomial(std::uint64_t n, std::uint64_t k);
/// ln C(n, k) in extended precision; the certificates exponentiate it, so its
/// absolute error becomes their relative error.
long double log_binomial_ld(std::uint64_t n, std::uint64_t k);
/// C(n, k) as a double (inf on overflow).
double binomial(std::uint64_t n, std::uint64_t k);

struct EnumerationOptions {
  /// Largest C(N, k) that may be enumerated.
  double guard = 1e8;
  unsigned threads = 1;
};

/// Σ over k-subsets I of {0..N-1} of Π_{i ∉ I} factors[i].
///
/// Enumerates subsets and divides each subset's members out of the global
/// product, tracking zero factors by count so that a zero in the complement
/// contributes exactly 0. Cost O(C(N,k)·k + N). Throws CapacityError when
/// C(N,k) exceeds options.guard. Factors must lie in [0, 1].
double complement_product_sum(std::span<const double> factors, std::size_t k,
                              const EnumerationOptions& options = {});

/// Same quantity as the elementary symmetric polynomial e_{N-k}(factors),
/// evaluated by the O(N·(N-k)) recurrence in extended precision.
long double complement_product_sum_recurrence(std::span<const double> factors, std::size_t k);

}  // namespace scenopt
