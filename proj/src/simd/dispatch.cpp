#include "memflow/simd/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace memflow::simd {

namespace detail {

bool avx2_supported() {
#if defined(MEMFLOW_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

#if !defined(MEMFLOW_HAVE_AVX2_TU) || !(defined(__x86_64__) || defined(_M_X64))
const Ops& avx2_ops() { return scalar_ops(); }
#endif

namespace {

Backend pick_initial() {
  if (const char* env = std::getenv("MEMFLOW_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend> g_backend{pick_initial()};

inline const Ops& current() {
  return g_backend.load(std::memory_order_relaxed) == Backend::avx2
             ? avx2_ops()
             : scalar_ops();
}

}  // namespace

}  // namespace detail

Backend active_backend() {
  return detail::g_backend.load(std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
  if (b == Backend::avx2 && !detail::avx2_supported())
    throw std::runtime_error("avx2 backend not supported on this host");
  detail::g_backend.store(b, std::memory_order_relaxed);
}

double dot(const double* a, const double* b, std::size_t n) {
  return detail::current().dot(a, b, n);
}

void dot2(const double* s, const double* c, const double* d, std::size_t n,
          double& out_sc, double& out_sd) {
  detail::current().dot2(s, c, d, n, out_sc, out_sd);
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  return detail::current().dot3(a, b, c, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  detail::current().axpy(alpha, x, y, n);
}

void add2_scaled(double* dst, const double* base, double a, const double* x,
                 double b, const double* y, std::size_t n) {
  detail::current().add2_scaled(dst, base, a, x, b, y, n);
}

double weighted_norm2(const double* w, const double* x, std::size_t n) {
  return detail::current().weighted_norm2(w, x, n);
}

double weighted_norm2c(const double* w, const double* re, const double* im,
                       std::size_t n) {
  return detail::current().weighted_norm2c(w, re, im, n);
}

}  // namespace memflow::simd
