#include "scenopt/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "scenopt/error.hpp"

namespace scenopt {

namespace {

void check(const Gaussian& g) {
  if (!(g.stddev > 0.0) || !std::isfinite(g.stddev) || !std::isfinite(g.mean)) {
    throw DomainError("gaussian requires finite mean and stddev > 0");
  }
}

double cdf_of(const Dist1D& d, double x) {
  return std::visit(
      [x](const auto& dist) -> double {
        using T = std::decay_t<decltype(dist)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return normal_cdf(x, dist.mean, dist.stddev);
        } else {
          return dist.cdf(x);
        }
      },
      d);
}

// Integration range and interior breakpoints where |F_a − F_b| may have a kink.
struct Plan {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> cuts;
};

void extend(Plan& p, const Dist1D& d, bool& first) {
  double lo = 0.0;
  double hi = 0.0;
  if (const auto* g = std::get_if<Gaussian>(&d)) {
    check(*g);
    lo = g->mean - 10.0 * g->stddev;
    hi = g->mean + 10.0 * g->stddev;
  } else {
    const auto& e = std::get<Empirical>(d);
    lo = e.samples().front();
    hi = e.samples().back();
    p.cuts.insert(p.cuts.end(), e.samples().begin(), e.samples().end());
  }
  if (first) {
    p.lo = lo;
    p.hi = hi;
    first = false;
  } else {
    p.lo = std::min(p.lo, lo);
    p.hi = std::max(p.hi, hi);
  }
}

Plan make_plan(const Dist1D& a, const Dist1D& b) {
  Plan p;
  bool first = true;
  extend(p, a, first);
  extend(p, b, first);

  // Widen the gaussian window to the 10σ rule computed over both laws.
  const auto* ga = std::get_if<Gaussian>(&a);
  const auto* gb = std::get_if<Gaussian>(&b);
  if (ga && gb) {
    const double s = std::max(ga->stddev, gb->stddev);
    p.lo = std::min(ga->mean, gb->mean) - 10.0 * s;
    p.hi = std::max(ga->mean, gb->mean) + 10.0 * s;
    if (ga->stddev != gb->stddev) {
      p.cuts.push_back((gb->mean * ga->stddev - ga->mean * gb->stddev) /
                       (ga->stddev - gb->stddev));
    }
  }
  std::erase_if(p.cuts, [&](double c) { return !(c > p.lo && c < p.hi); });
  std::sort(p.cuts.begin(), p.cuts.end());
  p.cuts.erase(std::unique(p.cuts.begin(), p.cuts.end()), p.cuts.end());
  return p;
}

}  // namespace

Empirical::Empirical(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw DomainError("empirical distribution needs at least one sample");
  for (double s : samples_) {
    if (!std::isfinite(s)) throw DomainError("empirical samples must be finite");
  }
  std::sort(samples_.begin(), samples_.end());
}

double Empirical::cdf(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double normal_cdf(double x, double mean, double stddev) {
  return 0.5 * std::erfc(-(x - mean) / (stddev * std::numbers::sqrt2));
}

double w1_gaussian(const Gaussian& a, const Gaussian& b) {
  check(a);
  check(b);
  const double dmu = a.mean - b.mean;
  const double dsigma = std::abs(a.stddev - b.stddev);
  if (dsigma == 0.0) return std::abs(dmu);
  const double c = dmu / dsigma;
  const double phi = std::exp(-0.5 * c * c) / std::sqrt(2.0 * std::numbers::pi);
  // c·(2Φ(c) − 1) = |c|·erf(|c|/√2), written to stay accurate for small |c|.
  const double centered = std::abs(c) * std::erf(std::abs(c) / std::numbers::sqrt2);
  return dsigma * (centered + 2.0 * phi);
}

double w1_cdf_integral(const Dist1D& a, const Dist1D& b, double tol) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  const Plan plan = make_plan(a, b);

  std::vector<double> nodes{plan.lo};
  auto push_to = [&](double x) {
    const double from = nodes.back();
    const auto parts = static_cast<std::size_t>(std::ceil(x - from));
    for (std::size_t k = 1; k < parts; ++k) {
      nodes.push_back(from + (x - from) * static_cast<double>(k) / static_cast<double>(parts));
    }
    nodes.push_back(x);
  };
  for (double c : plan.cuts) push_to(c);
  push_to(plan.hi);

  const auto integrand = [&](double x) { return std::abs(cdf_of(a, x) - cdf_of(b, x)); };
  const std::size_t pieces = nodes.size() - 1;

  // Boost's own adaptive driver stops on a relative criterion, which never
  // triggers in the tails where the integrand is ~0. Bisect on the absolute
  // error instead, using single Gauss-Kronrod evaluations.
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double total = 0.0;
  double total_error = 0.0;
  struct Piece {
    double x0, x1, tol;
    int depth;
  };
  std::vector<Piece> stack;
  for (std::size_t k = 0; k < pieces; ++k) {
    if (nodes[k + 1] > nodes[k]) {
      stack.push_back({nodes[k], nodes[k + 1], tol / static_cast<double>(pieces), 40});
    }
  }
  while (!stack.empty()) {
    const Piece p = stack.back();
    stack.pop_back();
    double err = 0.0;
    const double value = GK::integrate(integrand, p.x0, p.x1, 0, 0.0, &err);
    // The single-rule error is reported on the reference interval [-1, 1].
    const double abs_err = err * (p.x1 - p.x0) / 2;
    const double mid = (p.x0 + p.x1) / 2;
    if (abs_err <= p.tol || p.depth == 0 || !(mid > p.x0 && mid < p.x1)) {
      total += value;
      total_error += abs_err;
      continue;
    }
    stack.push_back({mid, p.x1, p.tol / 2, p.depth - 1});
    stack.push_back({p.x0, mid, p.tol / 2, p.depth - 1});
  }
  if (total_error > tol) {
    std::ostringstream msg;
    msg << "w1_cdf_integral did not reach tol=" << tol << " (error estimate " << total_error
        << " over " << pieces << " pieces on [" << plan.lo << ", " << plan.hi << "])";
    throw NumericError(msg.str());
  }
  return total;
}

double w1_empirical(const Empirical& a, const Empirical& b) {
  const auto xa = a.samples();
  const auto xb = b.samples();
  const std::size_t n = xa.size();
  const std::size_t m = xb.size();
  if (n == m) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += std::abs(xa[k] - xb[k]);
    return sum / static_cast<double>(n);
  }
  // Walk the merged quantile breakpoints k/n and l/m using integer cross-multiples.
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t u = 0;  // current position in units of 1/(n·m)
  const std::size_t total = n * m;
  while (u < total) {
    const std::size_t next_a = (i + 1) * m;
    const std::size_t next_b = (j + 1) * n;
    const std::size_t next = std::min(next_a, next_b);
    sum += static_cast<double>(next - u) * std::abs(xa[i] - xb[j]);
    u = next;
    if (next == next_a) ++i;
    if (next == next_b) ++j;
  }
  return sum / static_cast<double>(total);
}

}  // namespace scenopt
