#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "memflow/kernel.hpp"

namespace memflow {

// Causal scalar signal on a uniform grid. Samples sit at the cell midpoints
// t_i = (i + 1/2) dt and the signal is zero beyond the grid.
struct HalfLineSignal {
  double dt = 0.0;
  std::vector<double> v;

  double time(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dt; }
  double horizon() const { return dt * static_cast<double>(v.size()); }

  static HalfLineSignal from_function(const std::function<double(double)>& f,
                                      double dt, double horizon);
};

// Uniform half-grid of non-negative frequencies starting at 0. Values at
// negative frequencies follow from Hermitian symmetry of real signals.
struct FrequencyGrid {
  double domega = 0.0;
  std::size_t n = 0;

  double omega(std::size_t i) const { return domega * static_cast<double>(i); }

  static FrequencyGrid uniform(double omega_max, std::size_t n);
  // The full DFT circle of the signal: omega_k = 2 pi k/(N dt), k = 0..N-1.
  // On this grid the discrete Parseval identity is exact.
  static FrequencyGrid dft_aligned(const HalfLineSignal& s);
  // Default grid for the quadratic-form integrals: Nyquist-capped range with
  // spacing fine enough to resolve spectra of signals on [0, horizon].
  static FrequencyGrid for_norms(double dt, double horizon);
};

struct Spectrum {
  FrequencyGrid grid;
  std::vector<double> re, im;

  std::complex<double> value(std::size_t i) const { return {re[i], im[i]}; }
  // Hermitian extension for real signals.
  std::complex<double> value_at_negative(std::size_t i) const {
    return {re[i], -im[i]};
  }
};

// F(omega) = int_0^inf s(t) e^{-i omega t} dt by midpoint quadrature.
Spectrum forward_transform(const HalfLineSignal& s, const FrequencyGrid& g);
Spectrum forward_transform(const HalfLineSignal& s);

// Discrete Parseval pair: sum s^2 dt and (1/2pi) sum |F|^2 domega over the
// DFT circle. Equal to roundoff when F is on dft_aligned(s).
double signal_energy(const HalfLineSignal& s);
double spectrum_energy_dft(const Spectrum& f);

// Time-domain expression of the memory quadratic form:
//   int int mu(|t-t'|) s(t) s(t') dt dt'
// as the plain product-midpoint double sum on the signal grid.
double h_norm_time(const Kernel& k, const HalfLineSignal& grad_v);

// Frequency-domain expression (2/pi) int_0^inf mu_c |F|^2 domega.
double h_norm_freq(const Kernel& k, const HalfLineSignal& grad_v);
double h_norm_freq(const Kernel& k, const HalfLineSignal& grad_v,
                   const FrequencyGrid& g);

// (2/pi) int_0^inf |F|^2 / mu_c domega with a divergence diagnostic: the
// integrand average over the top decade of the grid is compared against the
// average near zero frequency; a ratio above 1e3 marks the state outside the
// admissible source space.
struct SNorm {
  double value = 0.0;
  bool finite = true;
  double tail_ratio = 0.0;
};
SNorm s_norm_freq(const Kernel& k, const HalfLineSignal& i0);
SNorm s_norm_freq(const Kernel& k, const HalfLineSignal& i0,
                  const FrequencyGrid& g);

}  // namespace memflow
