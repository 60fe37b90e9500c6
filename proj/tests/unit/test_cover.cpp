#include <doctest.h>

#include <algorithm>

#include "scenopt/cover.hpp"
#include "scenopt/drift.hpp"
#include "scenopt/error.hpp"
#include "support.hpp"

using namespace scenopt;

namespace {

std::vector<double> draws(testing::Gen& g, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = g.uniform(-4, 4);
  return v;
}

// Every single-index deletion from I must change the decision.
bool minimal(const CoverScenarios& set, const InvariantSet& inv, const CoverSolution& full) {
  for (std::size_t drop = 0; drop < inv.indices.size(); ++drop) {
    auto sub = inv.indices;
    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
    if (!sub.empty() && solve_cover(set, sub).same_decision(full)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("cover") {
  TEST_CASE("single scenario") {
    const auto sol = solve_cover(CoverScenarios({0.0}, {1.0}));
    CHECK(sol.center == 0.0);
    CHECK(sol.half_width == 1.0);
  }

  TEST_CASE("two scenarios") {
    const auto sol = solve_cover(CoverScenarios::with_radius({1.0, 3.0}, 0.5));
    CHECK(sol.center == 2.0);
    CHECK(sol.half_width == 1.5);
    CHECK(sol.lower() == 0.5);
    CHECK(sol.upper() == 3.5);
    CHECK(sol.binding_low == 0);
    CHECK(sol.binding_high == 1);
  }

  TEST_CASE("empty set and bad radii are rejected") {
    CHECK_THROWS_AS(solve_cover(CoverScenarios()), DomainError);
    CHECK_THROWS_AS(CoverScenarios({1.0}, {-1.0}), DomainError);
    CHECK_THROWS_AS(CoverScenarios({1.0, 2.0}, {1.0}), DomainError);
    const std::vector<std::size_t> none;
    CHECK_THROWS_AS(solve_cover(CoverScenarios::nominal({1.0}), none), DomainError);
  }

  TEST_CASE("robust flag") {
    CHECK(CoverScenarios::with_radius({1.0}, 0.1).is_robust());
    CHECK_FALSE(CoverScenarios::nominal({1.0}).is_robust());
    CHECK_FALSE(CoverScenarios({1.0, 2.0}, {1.0, 0.0}).is_robust());
  }

  TEST_CASE("feasibility and tightness") {
    testing::Gen g(1);
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = g.index(1, 60);
      std::vector<double> eta = draws(g, n), r(n);
      for (auto& x : r) x = g.uniform(0, 2);
      const CoverScenarios set(eta, r);
      const auto sol = solve_cover(set);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(sol.lower() <= eta[i] - r[i] + 1e-12);
        CHECK(sol.upper() >= eta[i] + r[i] - 1e-12);
      }
      CHECK(std::fabs(sol.lower() - (eta[sol.binding_low] - r[sol.binding_low])) < 1e-12);
      CHECK(std::fabs(sol.upper() - (eta[sol.binding_high] + r[sol.binding_high])) < 1e-12);
    }
  }

  TEST_CASE("constant radius adds exactly r0 to the static half width") {
    testing::Gen g(2);
    for (int rep = 0; rep < 200; ++rep) {
      auto eta = draws(g, g.index(1, 400));
      const auto base = solve_cover(CoverScenarios::nominal(eta));
      for (double r0 : {1.8, 2.0, 2.2, 2.4, g.uniform(0, 10)}) {
        const auto robust = solve_cover(CoverScenarios::with_radius(eta, r0));
        CHECK(robust.half_width == base.half_width + r0);
        CHECK(robust.center == base.center);
        CHECK(robust.binding_low == base.binding_low);
        CHECK(robust.binding_high == base.binding_high);
      }
    }
  }

  TEST_CASE("robust dominance") {
    testing::Gen g(3);
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = g.index(1, 50);
      auto eta = draws(g, n);
      std::vector<double> r(n, 0.0);
      const auto base = solve_cover(CoverScenarios::nominal(eta));
      CHECK(solve_cover(CoverScenarios(eta, r)).half_width == base.half_width);
      for (auto& x : r) x = g.uniform(0, 1);
      CHECK(solve_cover(CoverScenarios(eta, r)).half_width > base.half_width);
    }
  }

  TEST_CASE("adding a scenario never shrinks the cover") {
    testing::Gen g(4);
    for (int rep = 0; rep < 100; ++rep) {
      auto eta = draws(g, g.index(1, 30));
      const double before = solve_cover(CoverScenarios::with_radius(eta, 0.5)).half_width;
      eta.push_back(g.uniform(-6, 6));
      CHECK(solve_cover(CoverScenarios::with_radius(eta, 0.5)).half_width >= before);
    }
  }

  TEST_CASE("invariant set is the binding pair") {
    const auto set = CoverScenarios::with_radius({0.3, -1.0, 2.5, 0.0, 1.0}, 1.0);
    const auto inv = invariant_set_cover(set);
    CHECK(inv.indices == std::vector<std::size_t>{1, 2});
    CHECK(inv.cardinality() == 2);
  }

  TEST_CASE("single scenario invariant set") {
    CHECK(invariant_set_cover(CoverScenarios::with_radius({4.0}, 1.0)).indices ==
          std::vector<std::size_t>{0});
    // One interval containing all others binds both ends; it is the last survivor.
    const CoverScenarios nested({0.0, 0.5, -0.25, 0.0}, {1.0, 0.25, 0.5, 2.0});
    CHECK(invariant_set_cover(nested).indices == std::vector<std::size_t>{3});
    CHECK(invariant_set_cover(CoverScenarios::with_radius({1.0, 1.0, 1.0}, 0.5)).indices ==
          std::vector<std::size_t>{2});
  }

  TEST_CASE("invariant set contract on random and tied inputs") {
    testing::Gen g(5);
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = g.index(1, 40);
      std::vector<double> eta(n), r(n);
      for (std::size_t i = 0; i < n; ++i) {
        // Coarse values force ties between extreme scenarios.
        eta[i] = static_cast<double>(g.index(0, 4));
        r[i] = rep % 2 ? 1.0 : static_cast<double>(g.index(0, 2)) * 0.5;
      }
      const CoverScenarios set(eta, r);
      const auto full = solve_cover(set);
      const auto inv = invariant_set_cover(set);
      CHECK(inv.cardinality() >= 1);
      CHECK(inv.cardinality() <= 2);
      CHECK(std::is_sorted(inv.indices.begin(), inv.indices.end()));
      CHECK(solve_cover(set, inv.indices).same_decision(full));
      CHECK(minimal(set, inv, full));
    }
  }

  TEST_CASE("drifted draws at N = 309") {
    const auto fam = GaussianDrift1D::paper_rules(309);
    const auto eta = sample_sequence(fam, 309, 8);
    const auto set = CoverScenarios::with_radius(eta, 2.0);
    const auto inv = invariant_set_cover(set);
    const auto sol = solve_cover(set);
    CHECK(inv.indices.size() == 2);
    CHECK(std::find(inv.indices.begin(), inv.indices.end(), sol.binding_low) != inv.indices.end());
    CHECK(std::find(inv.indices.begin(), inv.indices.end(), sol.binding_high) != inv.indices.end());
  }
}
