#pragma once

#include <span>
#include <vector>

#include "scenopt/invariant.hpp"
#include "scenopt/scenario_set.hpp"

namespace scenopt {

using CoverScenarios = ScenarioSet<double>;

/// Smallest interval [center − half_width, center + half_width] containing
/// every inflated observation [η_i − r_i, η_i + r_i].
struct CoverSolution {
  double center = 0.0;
  double half_width = 0.0;
  std::size_t binding_low = 0;   // argmin η_i − r_i (lowest index on ties)
  std::size_t binding_high = 0;  // argmax η_i + r_i (lowest index on ties)

  double lower() const { return center - half_width; }
  double upper() const { return center + half_width; }
  bool contains(double x) const { return x >= lower() && x <= upper(); }

  /// Decision and objective equality; binding indices are not compared.
  bool same_decision(const CoverSolution& other) const {
    return center == other.center && half_width == other.half_width;
  }
  bool operator==(const CoverSolution&) const = default;
};

/// Exact solution of the robust interval-covering scenario problem.
///
/// The binding pair is chosen by exact comparison of η_i ∓ r_i, then
/// half_width = (η_hi − η_lo)/2 + (r_hi + r_lo)/2 and
/// center = (η_hi + η_lo)/2 + (r_hi − r_lo)/2. With a constant radius r0 this
/// makes the robust half width bit-identical to (static half width) + r0.
CoverSolution solve_cover(const CoverScenarios& scenarios);

/// Same problem restricted to the listed scenario indices.
CoverSolution solve_cover(const CoverScenarios& scenarios, std::span<const std::size_t> indices);

InvariantSet invariant_set_cover(const CoverScenarios& scenarios);

}  // namespace scenopt
