#include <doctest.h>

#include <algorithm>

#include "scenopt/error.hpp"
#include "scenopt/wasserstein.hpp"
#include "support.hpp"

using namespace scenopt;

TEST_SUITE("wasserstein") {
  // Oracle: 50-digit quadrature of ∫|F_a − F_b| (tests/oracles/risk_oracles.py).
  constexpr double kUnequalSigma = 0.23332618823507451935;

  TEST_CASE("identical gaussians are at distance zero") {
    CHECK(w1_gaussian({0, 1}, {0, 1}) == 0.0);
    CHECK(w1_gaussian({3.5, 0.2}, {3.5, 0.2}) == 0.0);
  }

  TEST_CASE("equal sigma returns the mean gap exactly") {
    CHECK(w1_gaussian({0, 1}, {0.2, 1}) == 0.2);
    CHECK(w1_gaussian({0.2, 1}, {0, 1}) == 0.2);
    CHECK(w1_gaussian({-1.25, 3}, {2.5, 3}) == 3.75);
  }

  TEST_CASE("unequal sigma matches the quadrature oracle") {
    CHECK(std::fabs(w1_gaussian({0, 1}, {0.2, 1.2}) - kUnequalSigma) < 1e-14);
    CHECK(std::fabs(w1_cdf_integral(Gaussian{0, 1}, Gaussian{0.2, 1.2}, 1e-10) - kUnequalSigma) <
          1e-10);
  }

  TEST_CASE("non-positive sigma is a domain error") {
    CHECK_THROWS_AS(w1_gaussian({0, 0}, {0, 1}), DomainError);
    CHECK_THROWS_AS(w1_gaussian({0, 1}, {0, -1}), DomainError);
    CHECK_THROWS_AS(w1_cdf_integral(Gaussian{0, 1}, Gaussian{0, 0}, 1e-6), DomainError);
  }

  TEST_CASE("quadrature tolerance must be positive") {
    CHECK_THROWS_AS(w1_cdf_integral(Gaussian{0, 1}, Gaussian{0, 1}, 0.0), DomainError);
  }

  TEST_CASE("quadrature of identical inputs is zero within tol") {
    CHECK(w1_cdf_integral(Gaussian{1, 2}, Gaussian{1, 2}, 1e-9) <= 1e-9);
    const Empirical e({0.5, -1.0, 3.0});
    CHECK(w1_cdf_integral(e, e, 1e-9) <= 1e-9);
  }

  TEST_CASE("quadrature of equal-sigma pair recovers the mean gap") {
    CHECK(std::fabs(w1_cdf_integral(Gaussian{0, 1}, Gaussian{0.2, 1}, 1e-9) - 0.2) <= 1e-9);
  }

  TEST_CASE("empirical distances") {
    CHECK(w1_empirical(Empirical({0, 1}), Empirical({0, 1})) == 0.0);
    CHECK(w1_empirical(Empirical({0}), Empirical({5})) == 5.0);
    CHECK(w1_empirical(Empirical({0, 2}), Empirical({1, 3})) == 1.0);
    CHECK(w1_empirical(Empirical({2, 0, 1}), Empirical({3, 1, 2})) == 1.0);
    CHECK(std::fabs(w1_cdf_integral(Empirical({0, 1, 2}), Empirical({1, 2, 3}), 1e-12) - 1.0) <
          1e-12);
  }

  TEST_CASE("unequal sample counts use the common quantile refinement") {
    // {0, 1} vs {0, 0.5, 1}: quantile steps at 1/3, 1/2, 2/3.
    // |0−0|·1/3 + |0−0.5|·1/6 + |1−0.5|·1/6 + |1−1|·1/3 = 1/6.
    CHECK(std::fabs(w1_empirical(Empirical({0, 1}), Empirical({0, 0.5, 1})) - 1.0 / 6.0) < 1e-15);
    testing::Gen g(11);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> a(g.index(1, 7)), b(g.index(1, 9));
      for (auto& x : a) x = g.uniform(-3, 3);
      for (auto& x : b) x = g.uniform(-3, 3);
      const double exact = w1_empirical(Empirical(a), Empirical(b));
      CHECK(std::fabs(exact - w1_cdf_integral(Empirical(a), Empirical(b), 1e-11)) < 1e-10);
    }
  }

  TEST_CASE("empty empirical sample is a domain error") {
    CHECK_THROWS_AS(Empirical(std::vector<double>{}), DomainError);
  }

  TEST_CASE("mixed gaussian and empirical inputs integrate") {
    const double v = w1_cdf_integral(Gaussian{0, 1}, Empirical({0.0}), 1e-9);
    // E|Z| = sqrt(2/π).
    CHECK(std::fabs(v - std::sqrt(2.0 / M_PI)) < 1e-8);
  }

  TEST_CASE("closed form agrees with quadrature on random pairs") {
    testing::Gen g(2024);
    for (int rep = 0; rep < 100; ++rep) {
      const Gaussian a{g.uniform(-5, 5), g.uniform(0.1, 5)};
      const Gaussian b{g.uniform(-5, 5), g.uniform(0.1, 5)};
      const double tol = 1e-8;
      CHECK(std::fabs(w1_gaussian(a, b) - w1_cdf_integral(a, b, tol)) <= tol);
    }
  }

  TEST_CASE("metric axioms on random triples") {
    testing::Gen g(7);
    const double tol = 1e-9;
    for (int rep = 0; rep < 50; ++rep) {
      const Gaussian a{g.uniform(-5, 5), g.uniform(0.1, 5)};
      const Gaussian b{g.uniform(-5, 5), g.uniform(0.1, 5)};
      const Gaussian c{g.uniform(-5, 5), g.uniform(0.1, 5)};
      const double ab = w1_cdf_integral(a, b, tol), ba = w1_cdf_integral(b, a, tol);
      const double bc = w1_cdf_integral(b, c, tol), ac = w1_cdf_integral(a, c, tol);
      CHECK(ab >= 0.0);
      CHECK(std::fabs(ab - ba) <= 2 * tol);
      CHECK(w1_cdf_integral(a, a, tol) <= tol);
      CHECK(ac <= ab + bc + 3 * tol);
      CHECK(w1_gaussian(a, b) == w1_gaussian(b, a));
      CHECK(w1_gaussian(a, c) <= w1_gaussian(a, b) + w1_gaussian(b, c) + 1e-12);
    }
  }

  TEST_CASE("translation invariance and one-sided shift") {
    testing::Gen g(99);
    for (int rep = 0; rep < 50; ++rep) {
      const Gaussian a{g.uniform(-5, 5), g.uniform(0.1, 5)};
      const Gaussian b{g.uniform(-5, 5), g.uniform(0.1, 5)};
      const double c = g.uniform(-3, 3);
      const double base = w1_gaussian(a, b);
      CHECK(std::fabs(w1_gaussian({a.mean + c, a.stddev}, {b.mean + c, b.stddev}) - base) < 1e-12);
      CHECK(std::fabs(w1_gaussian({a.mean + c, a.stddev}, b) - base) <= std::fabs(c) + 1e-12);
    }
  }

  TEST_CASE("exact distance dominates the mean gap") {
    testing::Gen g(5);
    for (int rep = 0; rep < 50; ++rep) {
      const Gaussian a{g.uniform(-2, 2), g.uniform(0.5, 2)};
      const Gaussian b{g.uniform(-2, 2), g.uniform(0.5, 2)};
      CHECK(w1_gaussian(a, b) >= std::fabs(a.mean - b.mean));
    }
  }
}
