#include "memflow/simd/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace memflow::simd::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void dot2_avx2(const double* s, const double* c, const double* d,
               std::size_t n, double& out_sc, double& out_sd) {
  __m256d accc = _mm256_setzero_pd();
  __m256d accd = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs = _mm256_loadu_pd(s + i);
    accc = _mm256_fmadd_pd(vs, _mm256_loadu_pd(c + i), accc);
    accd = _mm256_fmadd_pd(vs, _mm256_loadu_pd(d + i), accd);
  }
  double sc = hsum(accc), sd = hsum(accd);
  for (; i < n; ++i) {
    sc += s[i] * c[i];
    sd += s[i] * d[i];
  }
  out_sc = sc;
  out_sd = sd;
}

double dot3_avx2(const double* a, const double* b, const double* c,
                 std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void add2_scaled_avx2(double* dst, const double* base, double a,
                      const double* x, double b, const double* y,
                      std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(base + i);
    v = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), v);
    v = _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), v);
    _mm256_storeu_pd(dst + i, v);
  }
  for (; i < n; ++i) dst[i] = base[i] + a * x[i] + b * y[i];
}

double weighted_norm2_avx2(const double* w, const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d wx = _mm256_mul_pd(_mm256_loadu_pd(w + i), vx);
    acc = _mm256_fmadd_pd(wx, vx, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * x[i] * x[i];
  return s;
}

double weighted_norm2c_avx2(const double* w, const double* re,
                            const double* im, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vr = _mm256_loadu_pd(re + i);
    __m256d vi = _mm256_loadu_pd(im + i);
    __m256d mag = _mm256_fmadd_pd(vi, vi, _mm256_mul_pd(vr, vr));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), mag, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * (re[i] * re[i] + im[i] * im[i]);
  return s;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{dot_avx2,         dot2_avx2,
                       dot3_avx2,        axpy_avx2,
                       add2_scaled_avx2, weighted_norm2_avx2,
                       weighted_norm2c_avx2};
  return ops;
}

}  // namespace memflow::simd::detail

#endif  // x86-64
