#include "memflow/simd/simd.hpp"

namespace memflow::simd::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void dot2_scalar(const double* s, const double* c, const double* d,
                 std::size_t n, double& out_sc, double& out_sd) {
  double sc = 0.0, sd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sc += s[i] * c[i];
    sd += s[i] * d[i];
  }
  out_sc = sc;
  out_sd = sd;
}

double dot3_scalar(const double* a, const double* b, const double* c,
                   std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void add2_scaled_scalar(double* dst, const double* base, double a,
                        const double* x, double b, const double* y,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = base[i] + a * x[i] + b * y[i];
}

double weighted_norm2_scalar(const double* w, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i] * x[i];
  return s;
}

double weighted_norm2c_scalar(const double* w, const double* re,
                              const double* im, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * (re[i] * re[i] + im[i] * im[i]);
  return s;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{dot_scalar,         dot2_scalar,
                       dot3_scalar,        axpy_scalar,
                       add2_scaled_scalar, weighted_norm2_scalar,
                       weighted_norm2c_scalar};
  return ops;
}

}  // namespace memflow::simd::detail
