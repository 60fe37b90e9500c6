#include <doctest.h>

#include <cmath>

#include "scenopt/error.hpp"
#include "scenopt/risk.hpp"
#include "support.hpp"

using namespace scenopt;

namespace {

long double binom_ld(unsigned n, unsigned k) {
  long double c = 1.0L;
  for (unsigned j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

// 1 − (β/(N·C(N,k)))^{1/(N−k)} in extended precision.
double static_schedule(unsigned n, unsigned k, double beta) {
  const long double t = std::pow(static_cast<long double>(beta) / (n * binom_ld(n, k)),
                                 1.0L / static_cast<long double>(n - k));
  return static_cast<double>(1.0L - t);
}

}  // namespace

TEST_SUITE("schedule") {
  TEST_CASE("constant-radius schedule matches the oracle") {
    const std::size_t ks[] = {0, 1, 10, 100, 500, 900, 999};
    const double base[] = {0.01144690534306116, 0.018270159381116316, 0.063964561823961338,
                           0.30959270289877295, 0.75388598481639379,  0.96435912512002652,
                           0.99999999};
    for (double g : {0.0, 0.01, 0.05}) {
      const auto s = epsilon_schedule_constant_r(1000, 1e-2, g * 2.0, 2.0);
      CHECK(s.at(1000) == 1.0);
      CHECK(s.n() == 1000);
      for (int j = 0; j < 7; ++j) {
        const double raw = base[j] + g;
        if (raw <= 1.0) {
          CHECK(std::fabs(s.at(ks[j]) - raw) < 1e-12);
          CHECK(s.clamped[ks[j]] == 0);
        } else {
          CHECK(s.at(ks[j]) == 1.0);
          CHECK(s.clamped[ks[j]] == 1);
        }
      }
    }
  }

  TEST_CASE("without drift the schedule is the static non-convex schedule") {
    const auto s = epsilon_schedule_constant_r(1000, 1e-2, 0.0, 2.0);
    for (unsigned k = 0; k < 1000; ++k) {
      CHECK(testing::rel_err(s.at(k), static_schedule(1000, k, 1e-2)) < 1e-12);
    }
  }

  TEST_CASE("schedule invariants") {
    for (double rho : {0.0, 0.02, 0.1, 0.5}) {
      const auto s = epsilon_schedule_constant_r(300, 1e-3, rho, 2.0);
      CHECK(s.at(300) == 1.0);
      for (std::size_t k = 0; k + 1 <= 300; ++k) {
        CHECK(s.at(k) >= 0.0);
        CHECK(s.at(k) <= 1.0);
        if (s.at(k) < 1.0 && s.at(k + 1) < 1.0) CHECK(s.at(k) <= s.at(k + 1));
      }
    }
  }

  TEST_CASE("curves are ordered by rho over r") {
    const auto a = epsilon_schedule_constant_r(1000, 1e-2, 0.0, 2.0);
    const auto b = epsilon_schedule_constant_r(1000, 1e-2, 0.02, 2.0);
    const auto c = epsilon_schedule_constant_r(1000, 1e-2, 0.1, 2.0);
    for (std::size_t k = 0; k <= 1000; ++k) {
      CHECK(a.at(k) <= b.at(k));
      CHECK(b.at(k) <= c.at(k));
    }
  }

  TEST_CASE("constant-radius arguments are validated") {
    CHECK_THROWS_AS(epsilon_schedule_constant_r(10, 0.0, 0.1, 1.0), DomainError);
    CHECK_THROWS_AS(epsilon_schedule_constant_r(10, 0.1, 0.1, 0.0), DomainError);
    CHECK_THROWS_AS(epsilon_schedule_constant_r(10, 0.1, -0.1, 1.0), DomainError);
  }

  TEST_CASE("general schedule reproduces the closed form for constant gaps") {
    const std::size_t n = 40;
    const double r[] = {2.0};
    const auto general = epsilon_schedule_general(n, 1e-2, DriftSpec::model_a(0.04), r);
    const auto closed = epsilon_schedule_constant_r(n, 1e-2, 0.04, 2.0);
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(std::fabs(general.at(k) - closed.at(k)) <= 2e-10);
      CHECK(general.clamped[k] == closed.clamped[k]);
    }
  }

  TEST_CASE("general schedule with heterogeneous radii matches the oracle") {
    const std::size_t n = 50;
    const auto spec = DriftSpec::model_b([n](std::size_t i, std::size_t j) {
      const std::size_t hi = std::max(i, j), lo = std::min(i, j);
      return 0.2 * static_cast<double>(hi - lo) / static_cast<double>(n);
    });
    std::vector<double> radii(n);
    for (std::size_t i = 1; i <= n; ++i) radii[i - 1] = i % 2 == 1 ? 1.8 : 2.4;
    const auto s = epsilon_schedule_general(n, 1e-2, spec, radii);
    CHECK(std::fabs(s.at(3) - 0.37308081967395104) < 1e-9);
    CHECK(s.at(n) == 1.0);

    std::vector<double> gaps(n);
    for (std::size_t i = 1; i <= n; ++i) gaps[i - 1] = coupling_gap(spec, i, n, radii[i - 1]);
    CompensatedSum total;
    std::size_t counted = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (s.clamped[k] || s.at(k) == 0.0) continue;
      const double sk = schedule_subset_sum(s.at(k), gaps, k);
      CHECK(std::fabs(sk - 1e-2 / n) <= 1e-9);
      total.add(sk);
      ++counted;
    }
    CHECK(std::fabs(total.value() - 1e-2 * counted / n) <= n * 1e-9);
  }

  TEST_CASE("root is zero when the target already covers every subset") {
    const double gaps[] = {0.0, 0.0, 0.0, 0.0};
    // S_1(0) = C(4,1) = 4.
    CHECK(epsilon_for_cardinality(gaps, 1, 4.0).epsilon == 0.0);
    CHECK(epsilon_for_cardinality(gaps, 1, 3.9).epsilon > 0.0);
    CHECK(epsilon_for_cardinality(gaps, 4, 1e-3).epsilon == 1.0);
  }

  TEST_CASE("user supplied split") {
    const std::size_t n = 10;
    const double r[] = {2.0};
    std::vector<double> split(n, 1e-3);
    const auto even = epsilon_schedule_general(n, 1e-2, DriftSpec::model_a(0.0), r);
    const auto same = epsilon_schedule_general(n, 1e-2, DriftSpec::model_a(0.0), r, split);
    for (std::size_t k = 0; k <= n; ++k) CHECK(std::fabs(even.at(k) - same.at(k)) <= 2e-10);
    split[0] = 5e-3;
    split[9] = 5e-3;
    for (std::size_t k = 1; k < 9; ++k) split[k] = 0.0;
    CHECK_THROWS_AS(epsilon_schedule_general(n, 1e-2, DriftSpec::model_a(0.0), r, split),
                    DomainError);
    std::vector<double> skew(n, 0.5e-3);
    skew[0] = 5.5e-3;
    const auto s = epsilon_schedule_general(n, 1e-2, DriftSpec::model_a(0.0), r, skew);
    CHECK(s.at(0) < even.at(0));
    CHECK(s.at(5) > even.at(5));
    CHECK_THROWS_AS(epsilon_schedule_general(n, 1e-2, DriftSpec::model_a(0.0), r,
                                             std::vector<double>(n, 2e-3)),
                    DomainError);
  }
}
