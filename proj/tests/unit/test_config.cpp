#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "scenopt/config.hpp"
#include "scenopt/error.hpp"
#include "support.hpp"

using namespace scenopt;

TEST_SUITE("config") {
  TEST_CASE("key = value parsing") {
    const auto cfg = KeyValueConfig::parse(
        "# comment\n\n  N = 309  \nepsilon=0.1 # trailing\nr0 = 1.8, 2.0,2.2\nN = 400\n");
    CHECK(cfg.get_int("N", 0) == 400);
    CHECK(cfg.get_double("epsilon", 0) == 0.1);
    CHECK(cfg.get_doubles("r0", {}) == std::vector<double>{1.8, 2.0, 2.2});
    CHECK(cfg.get_double("missing", 7.5) == 7.5);
    CHECK(cfg.get_string("missing", "x") == "x");
    CHECK_THROWS_AS(cfg.require_string("missing"), ConfigError);
  }

  TEST_CASE("malformed config") {
    CHECK_THROWS_AS(KeyValueConfig::parse("just words\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse(" = 3\n"), ConfigError);
    const auto cfg = KeyValueConfig::parse("N = ten\nx = 1.5\n");
    CHECK_THROWS_AS(cfg.get_int("N", 0), ConfigError);
    CHECK_THROWS_AS(cfg.get_int("x", 0), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/scenopt.cfg"), ConfigError);
    try {
      KeyValueConfig::parse("a = 1\nbroken\n", "run.cfg");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("run.cfg:2") != std::string::npos);
    }
  }

  TEST_CASE("merge overrides") {
    auto base = KeyValueConfig::parse("a = 1\nb = 2\n");
    base.merge(KeyValueConfig::parse("b = 3\nc = 4\n"));
    CHECK(base.get_int("a", 0) == 1);
    CHECK(base.get_int("b", 0) == 3);
    CHECK(base.get_int("c", 0) == 4);
  }

  TEST_CASE("number parsing is strict") {
    CHECK(parse_double(" 1e-3 ", "x") == 1e-3);
    CHECK_THROWS_AS(parse_double("1.0abc", "x"), ConfigError);
    CHECK_THROWS_AS(parse_double("", "x"), ConfigError);
    CHECK(parse_int("-12", "x") == -12);
    CHECK_THROWS_AS(parse_int("12.0", "x"), ConfigError);
    CHECK(parse_doubles("1, 2,,3", "x") == std::vector<double>{1, 2, 3});
  }

  TEST_CASE("format_double round-trips") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(-0.0) == "-0");
    testing::Gen gen(77);
    for (int rep = 0; rep < 2000; ++rep) {
      std::uint64_t bits = gen.engine()();
      double x;
      std::memcpy(&x, &bits, sizeof x);
      if (!std::isfinite(x)) continue;
      const double back = parse_double(format_double(x), "x");
      CHECK(std::memcmp(&back, &x, sizeof x) == 0);
    }
  }
}
