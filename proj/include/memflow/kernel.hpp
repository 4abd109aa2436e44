#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "memflow/quadrature.hpp"

namespace memflow {

enum class KernelFamily { exponential, polynomial, prony, tabulated };

// Shear relaxation function mu(s) with two derivatives, half-line cosine and
// sine transforms, and segment integrals. Immutable after construction; all
// evaluations are pure and safe for concurrent use.
class Kernel {
 public:
  static Kernel exponential(double mu0, double lambda);
  static Kernel polynomial(double mu0, double c);  // mu0 * (1+s)^-c, c > 1
  static Kernel prony(std::vector<double> amplitudes, std::vector<double> rates);
  // Two-column table (s, mu(s)), strictly increasing s starting at 0;
  // evaluated by linear interpolation, zero beyond the last entry.
  static Kernel tabulated(std::vector<double> s, std::vector<double> mu);

  KernelFamily family() const;
  std::string describe() const;

  double mu(double s) const;
  double dmu(double s) const;
  double d2mu(double s) const;
  double mu0() const { return mu(0.0); }

  // Truncation horizon: mu(tau_max)/mu(0) <= 1e-10 for parametric families,
  // the table end for tabulated ones.
  double tau_max() const;

  // int_a^b mu(u) du, exact per family (table: exact for the interpolant).
  double segment_integral(double a, double b) const;

  // int_0^inf mu, quadrature horizon plus analytic tail.
  double total_viscosity() const;

  // mu_c(omega) and mu_F(omega) = mu_c - i*mu_s by oscillation-exact
  // quadrature on the kernel grid plus the family's analytic tail.
  double cosine(double omega) const;
  std::vector<double> cosine(const std::vector<double>& omegas) const;
  std::complex<double> fourier(double omega) const;
  std::vector<std::complex<double>> fourier(const std::vector<double>& omegas) const;

  bool degenerate() const;   // mu(0) <= 0
  bool integrable() const;   // false for tabulated tables that do not decay

  const SegmentedGrid& transform_grid() const;

 private:
  struct Impl;
  explicit Kernel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Positive, non-increasing rate profile xi(t) bounding the kernel ratio
// mu''/(-mu'). The profile class decides the energy decay class.
class DecayRate {
 public:
  enum class Profile { constant, inverse_linear, general };

  static DecayRate constant(double value);
  static DecayRate inverse_linear(double coefficient);  // coefficient/(1+t)
  static DecayRate sampled(std::vector<double> t, std::vector<double> xi);

  double operator()(double t) const;
  double integral(double t) const;  // int_0^t xi(s) ds
  Profile profile() const { return profile_; }
  // Constant value, or the inverse-linear coefficient.
  double parameter() const { return param_; }
  bool non_increasing(const std::vector<double>& grid, double rel_tol = 1e-9) const;

 private:
  Profile profile_ = Profile::constant;
  double param_ = 0.0;
  std::vector<double> t_, xi_, cum_;
};

enum class DecayClass { exponential, polynomial, other };

struct AdmissibilityReport {
  bool cosine_positive = false;
  double min_cosine = 0.0;
  double min_cosine_omega = 0.0;

  // The three pointwise dissipativity conditions.
  bool dmu_negative = false;
  bool d2mu_nonneg = false;
  bool ratio_bound_ok = false;
  bool diss4_ok() const { return dmu_negative && d2mu_nonneg && ratio_bound_ok; }

  bool derivatives_ok = true;
  std::optional<DecayRate> tightest_xi;
  DecayClass decay_class = DecayClass::other;

  bool admissible() const { return cosine_positive && diss4_ok(); }
};

// mu_c on the given grid. Throws std::invalid_argument for non-integrable
// tabulated kernels or negative frequencies.
std::vector<double> cosine_transform(const Kernel& k, const std::vector<double>& omega_grid);

std::vector<double> default_omega_grid();  // 200 points on [0, 50]

// Verifies the cosine positivity and dissipativity conditions; when xi is
// absent, derives the tightest admissible (largest non-increasing) rate from
// the pointwise ratio mu''/(-mu') and classifies the decay.
AdmissibilityReport check_admissibility(const Kernel& k,
                                        const std::optional<DecayRate>& xi = std::nullopt,
                                        const std::vector<double>& omega_grid = default_omega_grid());

double total_viscosity(const Kernel& k);

}  // namespace memflow
