#include "scenopt/cover.hpp"

#include <cmath>
#include <numeric>

#include "scenopt/error.hpp"

namespace scenopt {
namespace {

// Unevaluated sum s + e equal to a + b exactly (Knuth TwoSum).
struct Exact {
  double s;
  double e;
};

Exact two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

bool less(const Exact& x, const Exact& y) { return x.s < y.s || (x.s == y.s && x.e < y.e); }

template <class Indices>
CoverSolution solve_indices(const CoverScenarios& set, const Indices& indices) {
  bool first = true;
  std::size_t lo = 0, hi = 0;
  Exact lo_value{}, hi_value{};
  for (std::size_t i : indices) {
    const double eta = set.observation(i);
    const double r = set.radius(i);
    if (!std::isfinite(eta)) throw DomainError("cover observations must be finite");
    const Exact low = two_sum(eta, -r);
    const Exact high = two_sum(eta, r);
    if (first || less(low, lo_value)) {
      lo = i;
      lo_value = low;
    }
    // Ties keep the earlier index: "greater" must be strict.
    if (first || less(hi_value, high)) {
      hi = i;
      hi_value = high;
    }
    first = false;
  }
  if (first) throw DomainError("cover problem needs at least one scenario");

  const double eta_lo = set.observation(lo), eta_hi = set.observation(hi);
  const double r_lo = set.radius(lo), r_hi = set.radius(hi);
  CoverSolution sol;
  sol.half_width = (eta_hi - eta_lo) / 2 + (r_hi + r_lo) / 2;
  sol.center = (eta_hi + eta_lo) / 2 + (r_hi - r_lo) / 2;
  sol.binding_low = lo;
  sol.binding_high = hi;
  return sol;
}

}  // namespace

CoverSolution solve_cover(const CoverScenarios& scenarios) {
  std::vector<std::size_t> all(scenarios.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return solve_indices(scenarios, all);
}

CoverSolution solve_cover(const CoverScenarios& scenarios, std::span<const std::size_t> indices) {
  return solve_indices(scenarios, indices);
}

InvariantSet invariant_set_cover(const CoverScenarios& scenarios) {
  return greedy_invariant_set(
      scenarios.size(),
      [&](std::span<const std::size_t> idx) { return solve_cover(scenarios, idx); },
      [](const CoverSolution& a, const CoverSolution& b) { return a.same_decision(b); });
}

}  // namespace scenopt
