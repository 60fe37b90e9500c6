#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "scenopt/error.hpp"

namespace scenopt {

/// Observed scenarios η_1..η_N with tolerable observation radii r_1..r_N.
///
/// Radii must be finite and >= 0. A zero radius reduces that scenario to a
/// plain (non-robust) constraint; `is_robust()` reports whether all radii are
/// strictly positive. Indices in this API are 0-based.
template <class Obs>
class ScenarioSet {
 public:
  ScenarioSet() = default;

  ScenarioSet(std::vector<Obs> observations, std::vector<double> radii)
      : observations_(std::move(observations)), radii_(std::move(radii)) {
    if (observations_.size() != radii_.size()) {
      throw DomainError("scenario set: " + std::to_string(observations_.size()) +
                        " observations but " + std::to_string(radii_.size()) + " radii");
    }
    for (double r : radii_) {
      if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radii must be finite and >= 0");
    }
  }

  /// Every scenario inflated by the same radius r0.
  static ScenarioSet with_radius(std::vector<Obs> observations, double r0) {
    std::vector<double> radii(observations.size(), r0);
    return ScenarioSet(std::move(observations), std::move(radii));
  }

  /// Non-robust set (all radii zero).
  static ScenarioSet nominal(std::vector<Obs> observations) {
    return with_radius(std::move(observations), 0.0);
  }

  std::size_t size() const { return observations_.size(); }
  bool empty() const { return observations_.empty(); }
  const Obs& observation(std::size_t i) const { return observations_.at(i); }
  double radius(std::size_t i) const { return radii_.at(i); }
  std::span<const Obs> observations() const { return observations_; }
  std::span<const double> radii() const { return radii_; }

  bool is_robust() const {
    for (double r : radii_) {
      if (!(r > 0.0)) return false;
    }
    return !radii_.empty();
  }

 private:
  std::vector<Obs> observations_;
  std::vector<double> radii_;
};

}  // namespace scenopt
