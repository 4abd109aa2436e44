#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "memflow/spectral.hpp"

using namespace memflow;

namespace {

// Independent brute-force double sum over the same sample grid.
double brute_double_sum(const Kernel& k, const HalfLineSignal& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.v.size(); ++i)
    for (std::size_t j = 0; j < s.v.size(); ++j)
      acc += k.mu(std::abs(s.time(i) - s.time(j))) * s.v[i] * s.v[j];
  return acc * s.dt * s.dt;
}

}  // namespace

TEST_CASE("delta-like pulse transforms to a flat spectrum") {
  HalfLineSignal s;
  s.dt = 0.01;
  s.v.assign(200, 0.0);
  s.v[0] = 1.0 / s.dt;
  auto f = forward_transform(s, FrequencyGrid::uniform(100.0, 401));
  for (std::size_t l = 0; l < f.grid.n; ++l)
    CHECK(std::abs(f.value(l)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exponential signal matches its closed-form transform") {
  auto s = HalfLineSignal::from_function([](double t) { return std::exp(-t); }, 1e-3, 20.0);
  auto f = forward_transform(s, FrequencyGrid::uniform(3.0, 61));
  for (std::size_t l = 0; l < f.grid.n; ++l) {
    std::complex<double> exact = 1.0 / std::complex<double>(1.0, f.grid.omega(l));
    CHECK(std::abs(f.value(l) - exact) <= 1e-6);
  }
}

TEST_CASE("zero signal transforms to zero") {
  HalfLineSignal s;
  s.dt = 0.01;
  s.v.assign(100, 0.0);
  auto f = forward_transform(s);
  for (std::size_t l = 0; l < f.grid.n; ++l) CHECK(std::abs(f.value(l)) == 0.0);
}

TEST_CASE("parseval identity is exact on the dft circle") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  HalfLineSignal s;
  s.dt = 0.05;
  s.v.resize(256);
  for (double& x : s.v) x = d(rng);
  auto f = forward_transform(s, FrequencyGrid::dft_aligned(s));
  double et = signal_energy(s);
  double ef = spectrum_energy_dft(f);
  CHECK(std::abs(et - ef) <= 1e-12 * et);
}

TEST_CASE("time-domain form matches brute force to near roundoff") {
  Kernel k = Kernel::exponential(1.0, 1.0);
  auto s = HalfLineSignal::from_function(
      [](double t) { return t < 1.0 ? 1.0 : 0.0; }, 0.005, 2.0);
  double mine = h_norm_time(k, s);
  double brute = brute_double_sum(k, s);
  CHECK(std::abs(mine - brute) <= 1e-12 * std::abs(brute));
  // continuum value 2/e for the unit box against exp(-s)
  CHECK(mine == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-4));
}

TEST_CASE("zero signal has zero norms") {
  Kernel k = Kernel::exponential(1.0, 1.0);
  HalfLineSignal s;
  s.dt = 0.01;
  s.v.assign(500, 0.0);
  CHECK(h_norm_time(k, s) == 0.0);
  CHECK(h_norm_freq(k, s) == 0.0);
  auto sn = s_norm_freq(k, s);
  CHECK(sn.value == 0.0);
  CHECK(sn.finite);
}

TEST_CASE("frequency form of the memory norm hits the closed form") {
  // s = e^{-t}, mu = e^{-s}: int int mu(|t-t'|) s s' = 1/2
  Kernel k = Kernel::exponential(1.0, 1.0);
  auto s = HalfLineSignal::from_function([](double t) { return std::exp(-t); }, 0.002, 24.0);
  CHECK(h_norm_freq(k, s) == doctest::Approx(0.5).epsilon(2e-5));
  CHECK(h_norm_time(k, s) == doctest::Approx(0.5).epsilon(2e-5));
}

TEST_CASE("time and frequency forms agree on smooth signals") {
  std::vector<Kernel> kernels = {Kernel::exponential(1.0, 1.0),
                                 Kernel::exponential(1.0, 2.0),
                                 Kernel::polynomial(1.0, 3.0)};
  std::vector<std::function<double(double)>> sigs = {
      [](double t) { return std::exp(-0.5 * (t - 2.0) * (t - 2.0) / 0.25); },
      [](double t) { return std::exp(-t) * (1.0 + 0.5 * std::sin(2.0 * t)); },
      [](double t) { return t * std::exp(-t); },
  };
  for (const auto& k : kernels)
    for (const auto& f : sigs) {
      auto s = HalfLineSignal::from_function(f, 0.002, 16.0);
      double a = h_norm_time(k, s);
      double b = h_norm_freq(k, s, FrequencyGrid::uniform(80.0, 3201));
      CHECK(std::abs(a - b) <= 1e-5 * std::max(a, b));
      CHECK(a >= 0.0);
      CHECK(b >= 0.0);
    }
}

TEST_CASE("norms scale quadratically") {
  Kernel k = Kernel::exponential(1.0, 1.0);
  auto s = HalfLineSignal::from_function([](double t) { return std::exp(-t); }, 0.01, 10.0);
  auto s2 = s;
  for (double& x : s2.v) x *= 2.0;
  CHECK(h_norm_time(k, s2) == 4.0 * h_norm_time(k, s));
  CHECK(h_norm_freq(k, s2) == doctest::Approx(4.0 * h_norm_freq(k, s)).epsilon(1e-14));
}

TEST_CASE("source norm of a kernel-shaped state is finite and matches brute force") {
  Kernel k = Kernel::exponential(1.0, 1.0);
  auto i0 = HalfLineSignal::from_function([&](double t) { return 0.7 * k.mu(t); }, 0.01, 23.0);
  auto g = FrequencyGrid::uniform(60.0, 601);
  auto sn = s_norm_freq(k, i0, g);
  CHECK(sn.finite);

  // brute-force evaluation of the same grid integral
  std::vector<double> omegas(g.n);
  for (std::size_t l = 0; l < g.n; ++l) omegas[l] = g.omega(l);
  auto mc = k.cosine(omegas);
  double brute = 0.0;
  for (std::size_t l = 0; l < g.n; ++l) {
    std::complex<double> F(0.0, 0.0);
    for (std::size_t i = 0; i < i0.v.size(); ++i) {
      double ph = omegas[l] * i0.time(i);
      F += i0.v[i] * std::complex<double>(std::cos(ph), -std::sin(ph));
    }
    F *= i0.dt;
    double w = (l == 0 || l + 1 == g.n) ? 0.5 : 1.0;  // trapezoid oracle
    brute += w * g.domega * std::norm(F) / mc[l];
  }
  brute *= 2.0 / 3.14159265358979323846;
  CHECK(sn.value == doctest::Approx(brute).epsilon(1e-3));
}

TEST_CASE("rough state is flagged as outside the source space") {
  Kernel k = Kernel::exponential(1.0, 1.0);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  HalfLineSignal i0;
  i0.dt = 0.01;
  i0.v.resize(2000);
  for (double& x : i0.v) x = d(rng);
  auto sn = s_norm_freq(k, i0);
  CHECK_FALSE(sn.finite);
  CHECK(sn.tail_ratio > 1e3);
}
