#include "scenopt/rng.hpp"

#include <array>

namespace scenopt {

namespace {

std::array<std::uint32_t, 4> words(std::uint64_t a, std::uint64_t b) {
  return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
}

}  // namespace

std::mt19937_64 SeedSequence::stream(std::uint64_t index) const {
  const auto w = words(seed_, index);
  std::seed_seq seq(w.begin(), w.end());
  return std::mt19937_64(seq);
}

SeedSequence SeedSequence::split(std::uint64_t index) const {
  // Draw the child seed from a dedicated stream so children never alias
  // plain streams of the parent.
  auto engine = stream(~index);
  return SeedSequence(engine());
}

double standard_normal(std::mt19937_64& engine) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine);
}

}  // namespace scenopt
