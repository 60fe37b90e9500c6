#include <cmath>

#include "scenopt/kernels.hpp"

namespace scenopt::kernels {

namespace {

inline double vmax(double a, double b) { return a > b ? a : b; }
inline double vabs(double a) { return std::fabs(a); }

std::size_t count_outside(const double* x, std::size_t n, double lo, double hi) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += (x[i] < lo) | (x[i] > hi);
  return count;
}

void axpy2(double* out0, double* out1, const double* in0, const double* in1, const double* col0,
           const double* col1, double u, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out0[i] = in0[i] + col0[i] * u;
    out1[i] = in1[i] + col1[i] * u;
  }
}

double max_abs2(const double* y0, const double* y1, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = vmax(m, vmax(vabs(y0[i]), vabs(y1[i])));
  return m;
}

inline double dist_to_zero(double lower, double upper) { return vmax(vmax(lower, -upper), 0.0); }

double interval_lower_bound(const double* y0, const double* y1, const double* lo0,
                            const double* hi0, const double* lo1, const double* hi1,
                            std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d0 = dist_to_zero(y0[i] + lo0[i], y0[i] + hi0[i]);
    const double d1 = dist_to_zero(y1[i] + lo1[i], y1[i] + hi1[i]);
    m = vmax(m, vmax(d0, d1));
  }
  return m;
}

std::size_t count_norm_exceeding(const double* y0, const double* y1, std::size_t n, double h) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += vmax(vabs(y0[i]), vabs(y1[i])) > h;
  return count;
}

}  // namespace

namespace detail {
const KernelTable scalar_table{count_outside, axpy2, max_abs2, interval_lower_bound,
                               count_norm_exceeding};
}  // namespace detail

}  // namespace scenopt::kernels
