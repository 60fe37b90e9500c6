#pragma once

#include <span>
#include <variant>
#include <vector>

namespace scenopt {

struct Gaussian {
  double mean;
  double stddev;
};

/// Empirical measure: uniform weights over `samples`, kept sorted ascending.
class Empirical {
 public:
  explicit Empirical(std::vector<double> samples);

  std::span<const double> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double cdf(double x) const;

 private:
  std::vector<double> samples_;
};

/// One-dimensional distribution, either a normal law or an empirical measure.
using Dist1D = std::variant<Gaussian, Empirical>;

double normal_cdf(double x, double mean, double stddev);

/// Exact W1 between two normals.
///
/// In one dimension the quantile (comonotone) coupling is optimal, so
/// W1 = E|Δμ + Δσ·Z| with Z standard normal, which has the closed form
/// |Δσ|·(c·(2Φ(c) − 1) + 2φ(c)) for c = Δμ/|Δσ|. Equal σ returns |Δμ|.
double w1_gaussian(const Gaussian& a, const Gaussian& b);

/// W1 as ∫|F_a − F_b| by adaptive Gauss-Kronrod quadrature with absolute
/// error at most `tol`. Throws NumericError if the error target is missed.
double w1_cdf_integral(const Dist1D& a, const Dist1D& b, double tol);

/// Exact W1 between empirical measures by integrating |Q_a(u) − Q_b(u)| over
/// the common refinement of both quantile step functions.
double w1_empirical(const Empirical& a, const Empirical& b);

}  // namespace scenopt
