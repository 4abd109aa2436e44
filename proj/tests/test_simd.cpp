#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "memflow/simd/simd.hpp"

using namespace memflow;

namespace {

std::vector<double> random_vec(std::mt19937& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// Reductions may differ between backends by reordering only.
void check_close(double a, double b, std::size_t n) {
  double tol = 1e-13 * (std::abs(a) + std::abs(b) + static_cast<double>(n));
  CHECK(std::abs(a - b) <= tol);
}

const std::vector<std::size_t> kLengths = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 255, 1000, 1003};

}  // namespace

TEST_CASE("scalar and avx2 kernels are equivalent") {
  if (!simd::detail::avx2_supported()) {
    MESSAGE("avx2 not available; scalar-only host");
    return;
  }
  const auto& s = simd::detail::scalar_ops();
  const auto& v = simd::detail::avx2_ops();
  std::mt19937 rng(20240811);

  for (std::size_t n : kLengths) {
    auto a = random_vec(rng, n), b = random_vec(rng, n), c = random_vec(rng, n);
    auto w = random_vec(rng, n);
    for (double& x : w) x = std::abs(x);

    check_close(s.dot(a.data(), b.data(), n), v.dot(a.data(), b.data(), n), n);
    check_close(s.dot3(a.data(), b.data(), c.data(), n),
                v.dot3(a.data(), b.data(), c.data(), n), n);
    check_close(s.weighted_norm2(w.data(), a.data(), n),
                v.weighted_norm2(w.data(), a.data(), n), n);
    check_close(s.weighted_norm2c(w.data(), a.data(), b.data(), n),
                v.weighted_norm2c(w.data(), a.data(), b.data(), n), n);

    double sc1, sd1, sc2, sd2;
    s.dot2(a.data(), b.data(), c.data(), n, sc1, sd1);
    v.dot2(a.data(), b.data(), c.data(), n, sc2, sd2);
    check_close(sc1, sc2, n);
    check_close(sd1, sd2, n);

    auto y1 = random_vec(rng, n);
    auto y2 = y1;
    s.axpy(0.37, a.data(), y1.data(), n);
    v.axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

    std::vector<double> d1(n), d2(n);
    s.add2_scaled(d1.data(), a.data(), 0.5, b.data(), -1.25, c.data(), n);
    v.add2_scaled(d2.data(), a.data(), 0.5, b.data(), -1.25, c.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(d1[i] == doctest::Approx(d2[i]).epsilon(1e-15));
  }
}

TEST_CASE("dispatched kernels match reference results") {
  std::mt19937 rng(7);
  std::size_t n = 513;
  auto a = random_vec(rng, n), b = random_vec(rng, n);
  double expect = 0.0;
  for (std::size_t i = 0; i < n; ++i) expect += a[i] * b[i];
  check_close(simd::dot(a.data(), b.data(), n), expect, n);
}

TEST_CASE("backend can be forced to scalar") {
  auto prev = simd::active_backend();
  simd::force_backend(simd::Backend::scalar);
  CHECK(simd::active_backend() == simd::Backend::scalar);
  std::vector<double> a = {1.0, 2.0, 3.0}, b = {4.0, 5.0, 6.0};
  CHECK(simd::dot(a.data(), b.data(), 3) == doctest::Approx(32.0));
  simd::force_backend(prev);
}
