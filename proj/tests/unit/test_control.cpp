#include <doctest.h>

#include <algorithm>
#include <string>

#include "scenopt/control.hpp"
#include "scenopt/error.hpp"
#include "support.hpp"

using namespace scenopt;

namespace {

ControlInstance sampled(std::size_t n, std::size_t horizon, std::uint64_t seed) {
  const auto fam = MatrixGaussianDrift::stationary(n, control_mean_matrix(), 0.02);
  ControlInstance inst;
  inst.horizon = horizon;
  inst.scenarios = sample_control_scenarios(fam, n, seed);
  return inst;
}

// Objective from matrix powers, independent of the solver's tableau.
double direct_objective(const ControlInstance& inst, const std::vector<double>& u) {
  double worst = 0.0;
  for (const auto& a : inst.scenarios) {
    Mat2 p = Mat2::Identity();
    Vec2 x = Vec2::Zero();
    for (std::size_t t = 0; t < inst.horizon; ++t) {
      x += p * inst.b * u[t];
      p = a * p;
    }
    x += p * inst.x0;
    worst = std::max(worst, x.cwiseAbs().maxCoeff());
  }
  return worst;
}

bool changes_on_any_deletion(const ControlInstance& inst, const InvariantSet& inv,
                             const ControlSolution& full) {
  for (std::size_t drop = 0; drop < inv.indices.size(); ++drop) {
    auto sub = inv.indices;
    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
    if (!sub.empty() && solve_control(inst, sub, ControlStrategy::exhaustive) == full) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("control") {
  TEST_CASE("defaults") {
    const ControlInstance inst;
    CHECK(inst.horizon == 8);
    CHECK(inst.x0 == Vec2(1, 1));
    CHECK(inst.b == Vec2(0, 0.5));
    CHECK(inst.inputs == std::vector<double>{-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5});
  }

  TEST_CASE("reachability matrix") {
    ControlInstance inst;
    inst.horizon = 4;
    inst.scenarios = {Mat2::Zero(), Mat2::Identity(), control_mean_matrix()};
    const auto r0 = build_reachability(inst, 0);
    CHECK(r0.col(0) == inst.b);
    for (int t = 1; t < 4; ++t) CHECK(r0.col(t) == Vec2::Zero());
    const auto r1 = build_reachability(inst, 1);
    for (int t = 0; t < 4; ++t) CHECK(r1.col(t) == inst.b);

    inst.horizon = 3;
    const auto r2 = build_reachability(inst, 2);
    const Mat2 a = control_mean_matrix();
    const Mat2 a2 = a * a;
    CHECK((r2.col(0) - Vec2(0, 0.5)).norm() < 1e-15);
    CHECK((r2.col(1) - Vec2(-0.5, -0.45)).norm() < 1e-15);
    CHECK((r2.col(2) - Vec2(0.05, 0.405)).norm() < 1e-15);
    CHECK((r2.col(2) - a2 * inst.b).norm() < 1e-15);
    CHECK((free_response(inst, 2) - a * a * a * inst.x0).norm() < 1e-15);
  }

  TEST_CASE("one step, one scenario: direct scan of U") {
    ControlInstance inst;
    inst.horizon = 1;
    inst.scenarios = {control_mean_matrix()};
    double best = 1e300, best_u = 0;
    for (double u : inst.inputs) {
      const Vec2 x = control_mean_matrix() * inst.x0 + inst.b * u;
      if (x.cwiseAbs().maxCoeff() < best) {
        best = x.cwiseAbs().maxCoeff();
        best_u = u;
      }
    }
    CHECK(best_u == 2.0);
    for (auto s : {ControlStrategy::exhaustive, ControlStrategy::branch_and_bound}) {
      const auto sol = solve_control(inst, s);
      CHECK(sol.inputs == std::vector<double>{2.0});
      CHECK(sol.objective == doctest::Approx(0.2).epsilon(1e-15));
    }
  }

  TEST_CASE("singleton input set") {
    auto inst = sampled(20, 5, 1);
    inst.inputs = {0.0};
    double expected = 0.0;
    for (std::size_t i = 0; i < 20; ++i) {
      expected = std::max(expected, free_response(inst, i).cwiseAbs().maxCoeff());
    }
    for (auto s : {ControlStrategy::exhaustive, ControlStrategy::branch_and_bound}) {
      const auto sol = solve_control(inst, s);
      CHECK(sol.inputs == std::vector<double>(5, 0.0));
      CHECK(sol.objective == doctest::Approx(expected).epsilon(1e-14));
    }
  }

  TEST_CASE("ties resolve to the lexicographically smallest sequence") {
    auto inst = sampled(5, 3, 2);
    inst.b = Vec2::Zero();  // every sequence attains the same objective
    for (auto s : {ControlStrategy::exhaustive, ControlStrategy::branch_and_bound}) {
      CHECK(solve_control(inst, s).inputs == std::vector<double>(3, -5.0));
    }
  }

  TEST_CASE("global optimality against an independent enumeration") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto inst = sampled(12, 3, seed);
      const auto sol = solve_control(inst, ControlStrategy::branch_and_bound);
      CHECK(std::fabs(direct_objective(inst, sol.inputs) - sol.objective) < 1e-13);
      std::vector<double> u(3);
      double best = 1e300;
      for (double a : inst.inputs) {
        for (double b : inst.inputs) {
          for (double c : inst.inputs) {
            u = {a, b, c};
            best = std::min(best, direct_objective(inst, u));
          }
        }
      }
      CHECK(sol.objective <= best + 1e-13);
    }
  }

  TEST_CASE("strategies agree exactly") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto inst = sampled(50, 4, seed);
      const auto ex = solve_control(inst, ControlStrategy::exhaustive);
      const auto bb = solve_control(inst, ControlStrategy::branch_and_bound);
      CHECK(ex == bb);
      CHECK(control_objective(inst, ex.inputs) == ex.objective);
    }
  }

  TEST_CASE("exhaustive guard names the alternative") {
    const auto inst = sampled(3, 8, 0);
    try {
      solve_control(inst, ControlStrategy::exhaustive);
      FAIL("expected a capacity error");
    } catch (const CapacityError& e) {
      CHECK(std::string(e.what()).find("branch_and_bound") != std::string::npos);
    }
    ControlOptions relaxed;
    relaxed.exhaustive_guard = 1e3;
    CHECK_THROWS_AS(solve_control(sampled(3, 3, 0), ControlStrategy::exhaustive, relaxed),
                    CapacityError);
  }

  TEST_CASE("instance validation") {
    auto inst = sampled(3, 2, 0);
    inst.horizon = 0;
    CHECK_THROWS_AS(solve_control(inst, ControlStrategy::exhaustive), DomainError);
    inst.horizon = 2;
    inst.inputs = {1.0, 0.0};
    CHECK_THROWS_AS(solve_control(inst, ControlStrategy::exhaustive), DomainError);
    inst.inputs = {};
    CHECK_THROWS_AS(solve_control(inst, ControlStrategy::exhaustive), DomainError);
    inst.inputs = ControlInstance::default_inputs();
    inst.scenarios.clear();
    CHECK_THROWS_AS(solve_control(inst, ControlStrategy::exhaustive), DomainError);
    const auto ok = sampled(3, 2, 0);
    const std::vector<double> wrong_length{1.0};
    CHECK_THROWS_AS(control_objective(ok, wrong_length), DomainError);
  }

  TEST_CASE("adding a scenario never lowers the objective") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto inst = sampled(30, 3, seed);
      std::vector<std::size_t> idx;
      double prev = 0.0;
      for (std::size_t i = 0; i < 30; ++i) {
        idx.push_back(i);
        const double h = solve_control(inst, idx, ControlStrategy::branch_and_bound).objective;
        CHECK(h >= prev);
        prev = h;
      }
    }
  }

  TEST_CASE("invariant set contract") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto inst = sampled(50, 4, seed);
      const auto full = solve_control(inst, ControlStrategy::exhaustive);
      const auto analysis = analyze_control(inst, ControlStrategy::branch_and_bound);
      CHECK(analysis.solution == full);
      const auto& inv = analysis.invariant;
      CHECK(inv.cardinality() >= 1);
      CHECK(std::is_sorted(inv.indices.begin(), inv.indices.end()));
      CHECK(solve_control(inst, inv.indices, ControlStrategy::exhaustive) == full);
      CHECK(changes_on_any_deletion(inst, inv, full));
      CHECK(solve_control(inst, analysis.certificate, ControlStrategy::exhaustive) == full);
    }
  }

  TEST_CASE("certificate-driven extraction equals naive greedy") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto inst = sampled(seed % 2 ? 40 : 25, seed % 3 == 0 ? 4 : 3, seed + 100);
      for (auto s : {ControlStrategy::exhaustive, ControlStrategy::branch_and_bound}) {
        CHECK(invariant_set_control(inst, s).indices ==
              invariant_set_control_naive(inst, s).indices);
      }
    }
  }

  TEST_CASE("a single scenario can be the whole invariant set") {
    // Seed 2 reaches one retained scenario in the middle of a pass.
    const auto inst = sampled(40, 3, 2);
    const auto full = solve_control(inst, ControlStrategy::branch_and_bound);
    const auto inv = invariant_set_control(inst, ControlStrategy::branch_and_bound);
    CHECK(inv.cardinality() == 1);
    CHECK(solve_control(inst, inv.indices, ControlStrategy::branch_and_bound) == full);
    CHECK(inv.indices == invariant_set_control_naive(inst, ControlStrategy::branch_and_bound).indices);
  }

  TEST_CASE("constraint generation returns the subset solution") {
    const auto inst = sampled(60, 3, 9);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 60; i += 2) idx.push_back(i);
    const auto [sol, cert] =
        solve_control_generation(inst, idx, {}, ControlStrategy::branch_and_bound);
    CHECK(sol == solve_control(inst, idx, ControlStrategy::branch_and_bound));
    CHECK(solve_control(inst, cert, ControlStrategy::branch_and_bound) == sol);
    for (std::size_t c : cert) CHECK(std::binary_search(idx.begin(), idx.end(), c));
  }
}
