#pragma once

#include <cstddef>

// Runtime-dispatched arithmetic kernels for the hot inner loops: convolution
// lags, transform accumulations, state updates and weighted quadratures.
// Every kernel has a scalar reference implementation and (on x86-64) an AVX2
// variant; the dispatcher picks one at startup from cpuid, overridable with
// MEMFLOW_SIMD=scalar|avx2 or force_backend() for equivalence testing.
//
// Reductions accumulate in lane-private partial sums, so scalar and AVX2
// results may differ by O(n * eps) from the different summation order.

namespace memflow::simd {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);

// Testing hook. Forcing avx2 on a machine without it is rejected.
void force_backend(Backend b);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// Simultaneous sum_i s[i]*c[i] and sum_i s[i]*d[i] (one pass over s).
void dot2(const double* s, const double* c, const double* d, std::size_t n,
          double& out_sc, double& out_sd);

// sum_i a[i] * b[i] * c[i]
double dot3(const double* a, const double* b, const double* c, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// dst[i] = base[i] + a*x[i] + b*y[i]; dst must not alias base/x/y.
void add2_scaled(double* dst, const double* base, double a, const double* x,
                 double b, const double* y, std::size_t n);

// sum_i w[i] * x[i]^2
double weighted_norm2(const double* w, const double* x, std::size_t n);

// sum_i w[i] * (re[i]^2 + im[i]^2)
double weighted_norm2c(const double* w, const double* re, const double* im,
                       std::size_t n);

namespace detail {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  void (*dot2)(const double*, const double*, const double*, std::size_t,
               double&, double&);
  double (*dot3)(const double*, const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*add2_scaled)(double*, const double*, double, const double*, double,
                      const double*, std::size_t);
  double (*weighted_norm2)(const double*, const double*, std::size_t);
  double (*weighted_norm2c)(const double*, const double*, const double*,
                            std::size_t);
};

const Ops& scalar_ops();
bool avx2_supported();
const Ops& avx2_ops();  // valid only when avx2_supported()

}  // namespace detail

}  // namespace memflow::simd
