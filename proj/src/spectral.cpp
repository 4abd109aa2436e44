#include "memflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "memflow/quadrature.hpp"
#include "memflow/simd/simd.hpp"

namespace memflow {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> simpson_omega_weights(const FrequencyGrid& g) {
  if (g.n < 3) throw std::invalid_argument("frequency grid too small");
  std::size_t runs = g.n - 1;
  if (runs % 2 == 0) return simpson_weights(static_cast<int>(runs), g.domega);
  // odd panel count: Simpson on the front, one trapezoid panel at the end
  auto w = simpson_weights(static_cast<int>(runs - 1), g.domega);
  w.back() += 0.5 * g.domega;
  w.push_back(0.5 * g.domega);
  return w;
}

}  // namespace

HalfLineSignal HalfLineSignal::from_function(const std::function<double(double)>& f,
                                             double dt, double horizon) {
  if (!(dt > 0.0) || !(horizon > dt)) throw std::invalid_argument("bad signal grid");
  HalfLineSignal s;
  s.dt = dt;
  std::size_t n = static_cast<std::size_t>(std::llround(horizon / dt));
  s.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.v[i] = f(s.time(i));
  return s;
}

FrequencyGrid FrequencyGrid::uniform(double omega_max, std::size_t n) {
  if (!(omega_max > 0.0) || n < 2) throw std::invalid_argument("bad frequency grid");
  FrequencyGrid g;
  g.n = n;
  g.domega = omega_max / static_cast<double>(n - 1);
  return g;
}

FrequencyGrid FrequencyGrid::dft_aligned(const HalfLineSignal& s) {
  FrequencyGrid g;
  g.n = s.v.size();
  g.domega = 2.0 * kPi / (s.dt * static_cast<double>(s.v.size()));
  return g;
}

FrequencyGrid FrequencyGrid::for_norms(double dt, double horizon) {
  double omega_max = std::min(0.5 * kPi / dt, 120.0);
  double domega = std::min(2.0 * kPi / (8.0 * horizon), 0.025);
  std::size_t n = static_cast<std::size_t>(std::ceil(omega_max / domega)) + 1;
  return uniform(omega_max, n);
}

Spectrum forward_transform(const HalfLineSignal& s, const FrequencyGrid& g) {
  Spectrum out;
  out.grid = g;
  out.re.resize(g.n);
  out.im.resize(g.n);
  std::size_t n = s.v.size();
  std::vector<double> c(n), si(n);
  for (std::size_t l = 0; l < g.n; ++l) {
    fill_cos_sin(g.omega(l), 0.5 * s.dt, s.dt, n, c.data(), si.data());
    double sc, sd;
    simd::dot2(s.v.data(), c.data(), si.data(), n, sc, sd);
    out.re[l] = s.dt * sc;
    out.im[l] = -s.dt * sd;
  }
  return out;
}

Spectrum forward_transform(const HalfLineSignal& s) {
  return forward_transform(s, FrequencyGrid::for_norms(s.dt, s.horizon()));
}

double signal_energy(const HalfLineSignal& s) {
  double acc = 0.0;
  for (double x : s.v) acc += x * x;
  return acc * s.dt;
}

double spectrum_energy_dft(const Spectrum& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.grid.n; ++i)
    acc += f.re[i] * f.re[i] + f.im[i] * f.im[i];
  return acc * f.grid.domega / (2.0 * kPi);
}

double h_norm_time(const Kernel& k, const HalfLineSignal& grad_v) {
  std::size_t n = grad_v.v.size();
  if (n == 0) return 0.0;
  double dt = grad_v.dt;

  std::vector<double> mu_tab(n), mu_rev(n);
  for (std::size_t d = 0; d < n; ++d) mu_tab[d] = k.mu(static_cast<double>(d) * dt);
  for (std::size_t d = 0; d < n; ++d) mu_rev[d] = mu_tab[n - 1 - d];

  const double* s = grad_v.v.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // sum_{j<=i} mu[i-j] s_j  +  sum_{j>i} mu[j-i] s_j
    double row = simd::dot(s, mu_rev.data() + (n - 1 - i), i + 1);
    if (i + 1 < n) row += simd::dot(s + i + 1, mu_tab.data() + 1, n - 1 - i);
    acc += s[i] * row;
  }
  return acc * dt * dt;
}

double h_norm_freq(const Kernel& k, const HalfLineSignal& grad_v) {
  return h_norm_freq(k, grad_v, FrequencyGrid::for_norms(grad_v.dt, grad_v.horizon()));
}

double h_norm_freq(const Kernel& k, const HalfLineSignal& grad_v,
                   const FrequencyGrid& g) {
  std::vector<double> omegas(g.n);
  for (std::size_t l = 0; l < g.n; ++l) omegas[l] = g.omega(l);
  std::vector<double> mc = k.cosine(omegas);
  std::vector<double> w = simpson_omega_weights(g);

  std::size_t n = grad_v.v.size();
  std::vector<double> c(n), si(n);
  double acc = 0.0;
  for (std::size_t l = 0; l < g.n; ++l) {
    fill_cos_sin(omegas[l], 0.5 * grad_v.dt, grad_v.dt, n, c.data(), si.data());
    double sc, sd;
    simd::dot2(grad_v.v.data(), c.data(), si.data(), n, sc, sd);
    acc += w[l] * mc[l] * (sc * sc + sd * sd);
  }
  return acc * grad_v.dt * grad_v.dt * 2.0 / kPi;
}

SNorm s_norm_freq(const Kernel& k, const HalfLineSignal& i0) {
  return s_norm_freq(k, i0, FrequencyGrid::for_norms(i0.dt, i0.horizon()));
}

SNorm s_norm_freq(const Kernel& k, const HalfLineSignal& i0,
                  const FrequencyGrid& g) {
  std::vector<double> omegas(g.n);
  for (std::size_t l = 0; l < g.n; ++l) omegas[l] = g.omega(l);
  std::vector<double> mc = k.cosine(omegas);
  for (std::size_t l = 0; l < g.n; ++l)
    if (!(mc[l] > 0.0))
      throw std::invalid_argument("s-norm needs mu_c > 0 on the frequency grid");
  std::vector<double> w = simpson_omega_weights(g);

  std::size_t n = i0.v.size();
  std::vector<double> c(n), si(n);
  std::vector<double> integrand(g.n);
  double acc = 0.0;
  for (std::size_t l = 0; l < g.n; ++l) {
    fill_cos_sin(omegas[l], 0.5 * i0.dt, i0.dt, n, c.data(), si.data());
    double sc, sd;
    simd::dot2(i0.v.data(), c.data(), si.data(), n, sc, sd);
    integrand[l] = (sc * sc + sd * sd) * i0.dt * i0.dt / mc[l];
    acc += w[l] * integrand[l];
  }

  SNorm out;
  out.value = acc * 2.0 / kPi;

  // growth diagnostic: top decade of the grid against the near-zero window
  std::size_t lo_end = std::max<std::size_t>(2, g.n / 100);
  std::size_t hi_begin = g.n - std::max<std::size_t>(2, g.n / 10);
  double lo = 0.0, hi = 0.0;
  for (std::size_t l = 0; l < lo_end; ++l) lo += integrand[l];
  lo /= static_cast<double>(lo_end);
  for (std::size_t l = hi_begin; l < g.n; ++l) hi += integrand[l];
  hi /= static_cast<double>(g.n - hi_begin);
  out.tail_ratio =
      lo > 0.0 ? hi / lo
               : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  out.finite = !(out.tail_ratio > 1e3);
  return out;
}

}  // namespace memflow
