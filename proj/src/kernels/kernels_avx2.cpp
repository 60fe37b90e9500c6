#include <immintrin.h>

#include <cmath>

#include "scenopt/kernels.hpp"

#if !defined(__AVX2__)
#error kernels_avx2.cpp must be compiled with -mavx2
#endif

namespace scenopt::kernels {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hmax(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  double m = lane[0];
  for (int k = 1; k < 4; ++k) m = lane[k] > m ? lane[k] : m;
  return m;
}

inline double smax(double a, double b) { return a > b ? a : b; }
inline double sabs(double a) { return std::fabs(a); }

std::size_t count_outside(const double* x, std::size_t n, double lo, double hi) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d out = _mm256_or_pd(_mm256_cmp_pd(v, vlo, _CMP_LT_OQ),
                                     _mm256_cmp_pd(v, vhi, _CMP_GT_OQ));
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(out)));
  }
  for (; i < n; ++i) count += (x[i] < lo) | (x[i] > hi);
  return count;
}

void axpy2(double* out0, double* out1, const double* in0, const double* in1, const double* col0,
           const double* col1, double u, std::size_t n) {
  const __m256d vu = _mm256_set1_pd(u);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_add_pd(_mm256_loadu_pd(in0 + i),
                                    _mm256_mul_pd(_mm256_loadu_pd(col0 + i), vu));
    const __m256d b = _mm256_add_pd(_mm256_loadu_pd(in1 + i),
                                    _mm256_mul_pd(_mm256_loadu_pd(col1 + i), vu));
    _mm256_storeu_pd(out0 + i, a);
    _mm256_storeu_pd(out1 + i, b);
  }
  for (; i < n; ++i) {
    out0[i] = in0[i] + col0[i] * u;
    out1[i] = in1[i] + col1[i] * u;
  }
}

double max_abs2(const double* y0, const double* y1, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    m = _mm256_max_pd(m, _mm256_max_pd(abs_pd(_mm256_loadu_pd(y0 + i)),
                                       abs_pd(_mm256_loadu_pd(y1 + i))));
  }
  double r = hmax(m);
  for (; i < n; ++i) r = smax(r, smax(sabs(y0[i]), sabs(y1[i])));
  return r;
}

inline __m256d dist_to_zero(__m256d lower, __m256d upper) {
  const __m256d neg_upper = _mm256_xor_pd(upper, _mm256_set1_pd(-0.0));
  return _mm256_max_pd(_mm256_max_pd(lower, neg_upper), _mm256_setzero_pd());
}

double interval_lower_bound(const double* y0, const double* y1, const double* lo0,
                            const double* hi0, const double* lo1, const double* hi1,
                            std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(y0 + i);
    const __m256d b = _mm256_loadu_pd(y1 + i);
    const __m256d d0 = dist_to_zero(_mm256_add_pd(a, _mm256_loadu_pd(lo0 + i)),
                                    _mm256_add_pd(a, _mm256_loadu_pd(hi0 + i)));
    const __m256d d1 = dist_to_zero(_mm256_add_pd(b, _mm256_loadu_pd(lo1 + i)),
                                    _mm256_add_pd(b, _mm256_loadu_pd(hi1 + i)));
    m = _mm256_max_pd(m, _mm256_max_pd(d0, d1));
  }
  double r = hmax(m);
  for (; i < n; ++i) {
    const double d0 = smax(smax(y0[i] + lo0[i], -(y0[i] + hi0[i])), 0.0);
    const double d1 = smax(smax(y1[i] + lo1[i], -(y1[i] + hi1[i])), 0.0);
    r = smax(r, smax(d0, d1));
  }
  return r;
}

std::size_t count_norm_exceeding(const double* y0, const double* y1, std::size_t n, double h) {
  const __m256d vh = _mm256_set1_pd(h);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d norm = _mm256_max_pd(abs_pd(_mm256_loadu_pd(y0 + i)),
                                       abs_pd(_mm256_loadu_pd(y1 + i)));
    count += static_cast<std::size_t>(
        __builtin_popcount(_mm256_movemask_pd(_mm256_cmp_pd(norm, vh, _CMP_GT_OQ))));
  }
  for (; i < n; ++i) count += smax(sabs(y0[i]), sabs(y1[i])) > h;
  return count;
}

}  // namespace

namespace detail {
const KernelTable avx2_table{count_outside, axpy2, max_abs2, interval_lower_bound,
                             count_norm_exceeding};
}  // namespace detail

}  // namespace scenopt::kernels
