#pragma once

#include <cstdint>
#include <random>

namespace scenopt {

/// Seeded generator with independent substreams.
///
/// Every consumer of randomness asks for `stream(index)`; the engine for a
/// given (seed, index) pair is always the same, so a sequence element can be
/// regenerated on its own and parallel sampling reproduces serial output.
class SeedSequence {
 public:
  explicit SeedSequence(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::mt19937_64 stream(std::uint64_t index) const;

  /// Child sequence for a nested experiment level (e.g. one repetition).
  SeedSequence split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

double standard_normal(std::mt19937_64& engine);

}  // namespace scenopt
