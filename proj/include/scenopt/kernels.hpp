#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2 version chosen at runtime. Both produce bit-identical
// results: lanes perform the same IEEE operations in the same order, and the
// only reductions are max and integer counts, which are order independent.

namespace scenopt::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
/// Best supported ISA, unless SCENOPT_ISA=scalar|avx2 is set in the environment.
Isa detected_isa();
Isa active_isa();
/// Override the dispatch target. Throws DomainError if `isa` is unsupported.
void force_isa(Isa isa);

struct KernelTable {
  /// Number of x with x < lo or x > hi.
  std::size_t (*count_outside)(const double* x, std::size_t n, double lo, double hi);
  /// out_c = in_c + col_c·u for both coordinates; out may alias in.
  void (*axpy2)(double* out0, double* out1, const double* in0, const double* in1,
                const double* col0, const double* col1, double u, std::size_t n);
  /// max_i max(|y0_i|, |y1_i|), 0 for n = 0.
  double (*max_abs2)(const double* y0, const double* y1, std::size_t n);
  /// max_i max_c dist(0, [y_c + lo_c, y_c + hi_c]).
  double (*interval_lower_bound)(const double* y0, const double* y1, const double* lo0,
                                 const double* hi0, const double* lo1, const double* hi1,
                                 std::size_t n);
  /// Number of i with max(|y0_i|, |y1_i|) > h.
  std::size_t (*count_norm_exceeding)(const double* y0, const double* y1, std::size_t n, double h);
};

/// Table for a specific ISA; throws if unsupported. Used by equivalence tests.
const KernelTable& table(Isa isa);
const KernelTable& active();

inline std::size_t count_outside(std::span<const double> x, double lo, double hi) {
  return active().count_outside(x.data(), x.size(), lo, hi);
}

inline double max_abs2(std::span<const double> y0, std::span<const double> y1) {
  return active().max_abs2(y0.data(), y1.data(), y0.size());
}

inline std::size_t count_norm_exceeding(std::span<const double> y0, std::span<const double> y1,
                                        double h) {
  return active().count_norm_exceeding(y0.data(), y1.data(), y0.size(), h);
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(SCENOPT_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace scenopt::kernels
