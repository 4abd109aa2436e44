#include "memflow/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace memflow {

namespace {

constexpr double kHorizonDecay = 1e-10;  // mu(tau_max)/mu(0) target

double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + t * (ys[i + 1] - ys[i]);
}

}  // namespace

struct Kernel::Impl {
  KernelFamily family;
  std::vector<double> amp, rate;  // exponential/prony terms
  double poly_mu0 = 0.0, poly_c = 0.0;
  std::vector<double> tab_s, tab_mu, tab_cum;
  bool tab_integrable = true;
  double taumax = 0.0;

  SegmentedGrid grid;
  std::vector<double> mu_nodes;

  double mu(double s) const {
    switch (family) {
      case KernelFamily::exponential:
      case KernelFamily::prony: {
        double v = 0.0;
        for (std::size_t i = 0; i < amp.size(); ++i) v += amp[i] * std::exp(-rate[i] * s);
        return v;
      }
      case KernelFamily::polynomial:
        return poly_mu0 * std::pow(1.0 + s, -poly_c);
      case KernelFamily::tabulated:
        return interp_linear(tab_s, tab_mu, s);
    }
    return 0.0;
  }

  double dmu(double s) const {
    switch (family) {
      case KernelFamily::exponential:
      case KernelFamily::prony: {
        double v = 0.0;
        for (std::size_t i = 0; i < amp.size(); ++i)
          v -= amp[i] * rate[i] * std::exp(-rate[i] * s);
        return v;
      }
      case KernelFamily::polynomial:
        return -poly_mu0 * poly_c * std::pow(1.0 + s, -poly_c - 1.0);
      case KernelFamily::tabulated: {
        double h = fd_step(s);
        if (s < h) return (mu(s + h) - mu(s)) / h;
        return (mu(s + h) - mu(s - h)) / (2.0 * h);
      }
    }
    return 0.0;
  }

  double d2mu(double s) const {
    switch (family) {
      case KernelFamily::exponential:
      case KernelFamily::prony: {
        double v = 0.0;
        for (std::size_t i = 0; i < amp.size(); ++i)
          v += amp[i] * rate[i] * rate[i] * std::exp(-rate[i] * s);
        return v;
      }
      case KernelFamily::polynomial:
        return poly_mu0 * poly_c * (poly_c + 1.0) * std::pow(1.0 + s, -poly_c - 2.0);
      case KernelFamily::tabulated: {
        double h = fd_step(s);
        if (s < h) return (mu(s + 2 * h) - 2.0 * mu(s + h) + mu(s)) / (h * h);
        return (mu(s + h) - 2.0 * mu(s) + mu(s - h)) / (h * h);
      }
    }
    return 0.0;
  }

  double fd_step(double) const {
    if (tab_s.size() < 2) return 1e-3;
    return (tab_s.back() - tab_s.front()) / static_cast<double>(tab_s.size() - 1);
  }

  double segment_integral(double a, double b) const {
    if (b <= a) return 0.0;
    switch (family) {
      case KernelFamily::exponential:
      case KernelFamily::prony: {
        double v = 0.0;
        for (std::size_t i = 0; i < amp.size(); ++i)
          v += amp[i] / rate[i] * (std::exp(-rate[i] * a) - std::exp(-rate[i] * b));
        return v;
      }
      case KernelFamily::polynomial: {
        double p = 1.0 - poly_c;
        return poly_mu0 / (poly_c - 1.0) *
               (std::pow(1.0 + a, p) - std::pow(1.0 + b, p));
      }
      case KernelFamily::tabulated:
        return tab_integral_to(b) - tab_integral_to(a);
    }
    return 0.0;
  }

  // Exact integral of the interpolant over [0, x].
  double tab_integral_to(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= tab_s.back()) return tab_cum.back();
    auto it = std::upper_bound(tab_s.begin(), tab_s.end(), x);
    std::size_t i = static_cast<std::size_t>(it - tab_s.begin()) - 1;
    double mid = interp_linear(tab_s, tab_mu, x);
    return tab_cum[i] + 0.5 * (tab_mu[i] + mid) * (x - tab_s[i]);
  }

  double tail_integral() const {  // int over (grid.right(), inf)
    double T = grid.right();
    switch (family) {
      case KernelFamily::exponential:
      case KernelFamily::prony: {
        double v = 0.0;
        for (std::size_t i = 0; i < amp.size(); ++i)
          v += amp[i] / rate[i] * std::exp(-rate[i] * T);
        return v;
      }
      case KernelFamily::polynomial:
        return poly_mu0 / (poly_c - 1.0) * std::pow(1.0 + T, 1.0 - poly_c);
      case KernelFamily::tabulated:
        return 0.0;
    }
    return 0.0;
  }

  // Analytic tail of the cosine/sine transforms beyond the quadrature grid.
  OscPair tail_transform(double omega) const {
    double T = grid.right();
    OscPair out;
    switch (family) {
      case KernelFamily::exponential:
      case KernelFamily::prony: {
        double c = std::cos(omega * T), s = std::sin(omega * T);
        for (std::size_t i = 0; i < amp.size(); ++i) {
          double l = rate[i];
          double e = amp[i] * std::exp(-l * T) / (l * l + omega * omega);
          out.cos_part += e * (l * c - omega * s);
          out.sin_part += e * (l * s + omega * c);
        }
        return out;
      }
      case KernelFamily::polynomial: {
        if (omega == 0.0) return {tail_integral(), 0.0};
        // two integrations by parts; the dropped remainder is O(mu'''(T)/w^4)
        double m0 = mu(T), m1 = dmu(T), m2 = d2mu(T);
        double c = std::cos(omega * T), s = std::sin(omega * T);
        double w2 = omega * omega, w3 = w2 * omega;
        out.cos_part = -m0 * s / omega - m1 * c / w2 + m2 * s / w3;
        out.sin_part = m0 * c / omega - m1 * s / w2 - m2 * c / w3;
        return out;
      }
      case KernelFamily::tabulated:
        return out;
    }
    return out;
  }
};

Kernel Kernel::exponential(double mu0, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("exponential kernel needs lambda > 0");
  if (mu0 < 0.0) throw std::invalid_argument("kernel amplitude must be non-negative");
  auto impl = std::make_shared<Impl>();
  impl->family = KernelFamily::exponential;
  impl->amp = {mu0};
  impl->rate = {lambda};
  impl->taumax = std::log(1.0 / kHorizonDecay) / lambda;
  impl->grid = SegmentedGrid::refine_origin(impl->taumax, 8, 768);
  for (double s : impl->grid.nodes()) impl->mu_nodes.push_back(impl->mu(s));
  return Kernel(impl);
}

Kernel Kernel::prony(std::vector<double> amplitudes, std::vector<double> rates) {
  if (amplitudes.size() != rates.size() || amplitudes.empty())
    throw std::invalid_argument("prony kernel needs matching amplitude/rate lists");
  double rmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] > 0.0)) throw std::invalid_argument("prony rates must be positive");
    if (amplitudes[i] < 0.0) throw std::invalid_argument("prony amplitudes must be non-negative");
    rmin = std::min(rmin, rates[i]);
  }
  auto impl = std::make_shared<Impl>();
  impl->family = KernelFamily::prony;
  impl->amp = std::move(amplitudes);
  impl->rate = std::move(rates);
  impl->taumax = std::log(1.0 / kHorizonDecay) / rmin;
  impl->grid = SegmentedGrid::refine_origin(impl->taumax, 10, 768);
  for (double s : impl->grid.nodes()) impl->mu_nodes.push_back(impl->mu(s));
  return Kernel(impl);
}

Kernel Kernel::polynomial(double mu0, double c) {
  if (!(c > 1.0)) throw std::invalid_argument("polynomial kernel needs c > 1 for integrability");
  if (mu0 < 0.0) throw std::invalid_argument("kernel amplitude must be non-negative");
  auto impl = std::make_shared<Impl>();
  impl->family = KernelFamily::polynomial;
  impl->poly_mu0 = mu0;
  impl->poly_c = c;
  impl->taumax = std::pow(1.0 / kHorizonDecay, 1.0 / c) - 1.0;
  int segs = std::max(8, static_cast<int>(std::ceil(std::log2(impl->taumax / 0.02))) + 1);
  impl->grid = SegmentedGrid::refine_origin(impl->taumax, segs, 64);
  // oscillation-exact continuation until the kernel is below 1e-14 of mu(0)
  double far = std::pow(1e14, 1.0 / c) - 1.0;
  impl->grid.extend_geometric(far, 64);
  for (double s : impl->grid.nodes()) impl->mu_nodes.push_back(impl->mu(s));
  return Kernel(impl);
}

Kernel Kernel::tabulated(std::vector<double> s, std::vector<double> mu) {
  if (s.size() != mu.size() || s.size() < 2)
    throw std::invalid_argument("tabulated kernel needs two equal columns, length >= 2");
  if (s.front() != 0.0) throw std::invalid_argument("tabulated kernel must start at s = 0");
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!(s[i + 1] > s[i])) throw std::invalid_argument("tabulated s must be strictly increasing");
  for (double v : mu) {
    if (!std::isfinite(v)) throw std::invalid_argument("tabulated values must be finite");
    if (v < 0.0) throw std::invalid_argument("tabulated kernel must be non-negative");
  }
  auto impl = std::make_shared<Impl>();
  impl->family = KernelFamily::tabulated;
  impl->tab_s = std::move(s);
  impl->tab_mu = std::move(mu);
  impl->taumax = impl->tab_s.back();
  impl->tab_cum.resize(impl->tab_s.size(), 0.0);
  for (std::size_t i = 0; i + 1 < impl->tab_s.size(); ++i)
    impl->tab_cum[i + 1] = impl->tab_cum[i] +
                           0.5 * (impl->tab_mu[i] + impl->tab_mu[i + 1]) *
                               (impl->tab_s[i + 1] - impl->tab_s[i]);
  bool nonincreasing = true;
  for (std::size_t i = 0; i + 1 < impl->tab_mu.size(); ++i)
    if (impl->tab_mu[i + 1] > impl->tab_mu[i] * (1.0 + 1e-12) + 1e-300)
      nonincreasing = false;
  double m0 = impl->tab_mu.front();
  impl->tab_integrable = nonincreasing && (m0 <= 0.0 || impl->tab_mu.back() <= 0.05 * m0);
  impl->grid = SegmentedGrid::from_breakpoints(impl->tab_s, 2);
  for (double x : impl->grid.nodes()) impl->mu_nodes.push_back(impl->mu(x));
  return Kernel(impl);
}

KernelFamily Kernel::family() const { return impl_->family; }

std::string Kernel::describe() const {
  std::ostringstream os;
  switch (impl_->family) {
    case KernelFamily::exponential:
      os << "exponential(mu0=" << impl_->amp[0] << ", lambda=" << impl_->rate[0] << ")";
      break;
    case KernelFamily::prony: {
      os << "prony(terms=" << impl_->amp.size() << ")";
      break;
    }
    case KernelFamily::polynomial:
      os << "polynomial(mu0=" << impl_->poly_mu0 << ", c=" << impl_->poly_c << ")";
      break;
    case KernelFamily::tabulated:
      os << "tabulated(points=" << impl_->tab_s.size() << ", horizon=" << impl_->taumax << ")";
      break;
  }
  return os.str();
}

double Kernel::mu(double s) const { return impl_->mu(s); }
double Kernel::dmu(double s) const { return impl_->dmu(s); }
double Kernel::d2mu(double s) const { return impl_->d2mu(s); }
double Kernel::tau_max() const { return impl_->taumax; }

double Kernel::segment_integral(double a, double b) const {
  return impl_->segment_integral(a, b);
}

double Kernel::total_viscosity() const {
  return impl_->segment_integral(0.0, impl_->grid.right()) + impl_->tail_integral();
}

double Kernel::cosine(double omega) const {
  return cosine(std::vector<double>{omega})[0];
}

std::vector<double> Kernel::cosine(const std::vector<double>& omegas) const {
  if (!integrable())
    throw std::invalid_argument("cosine transform rejected: kernel tail does not decay");
  std::vector<double> out;
  out.reserve(omegas.size());
  for (double w : omegas) {
    if (!(w >= 0.0)) throw std::invalid_argument("cosine transform needs omega >= 0");
    OscPair q = integrate_oscillatory(impl_->grid, impl_->mu_nodes, w);
    out.push_back(q.cos_part + impl_->tail_transform(w).cos_part);
  }
  return out;
}

std::complex<double> Kernel::fourier(double omega) const {
  return fourier(std::vector<double>{omega})[0];
}

std::vector<std::complex<double>> Kernel::fourier(const std::vector<double>& omegas) const {
  if (!integrable())
    throw std::invalid_argument("fourier transform rejected: kernel tail does not decay");
  std::vector<std::complex<double>> out;
  out.reserve(omegas.size());
  for (double w : omegas) {
    double aw = std::abs(w);
    OscPair q = integrate_oscillatory(impl_->grid, impl_->mu_nodes, aw);
    OscPair t = impl_->tail_transform(aw);
    std::complex<double> f(q.cos_part + t.cos_part, -(q.sin_part + t.sin_part));
    out.push_back(w < 0.0 ? std::conj(f) : f);
  }
  return out;
}

bool Kernel::degenerate() const { return !(mu0() > 0.0); }

bool Kernel::integrable() const {
  return impl_->family != KernelFamily::tabulated || impl_->tab_integrable;
}

const SegmentedGrid& Kernel::transform_grid() const { return impl_->grid; }

// ---------------------------------------------------------------------------

DecayRate DecayRate::constant(double value) {
  if (!(value > 0.0)) throw std::invalid_argument("decay rate must be positive");
  DecayRate r;
  r.profile_ = Profile::constant;
  r.param_ = value;
  return r;
}

DecayRate DecayRate::inverse_linear(double coefficient) {
  if (!(coefficient > 0.0)) throw std::invalid_argument("decay coefficient must be positive");
  DecayRate r;
  r.profile_ = Profile::inverse_linear;
  r.param_ = coefficient;
  return r;
}

DecayRate DecayRate::sampled(std::vector<double> t, std::vector<double> xi) {
  if (t.size() != xi.size() || t.size() < 2)
    throw std::invalid_argument("sampled decay rate needs two equal columns");
  DecayRate r;
  r.profile_ = Profile::general;
  r.t_ = std::move(t);
  r.xi_ = std::move(xi);
  r.cum_.resize(r.t_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < r.t_.size(); ++i)
    r.cum_[i + 1] = r.cum_[i] + 0.5 * (r.xi_[i] + r.xi_[i + 1]) * (r.t_[i + 1] - r.t_[i]);
  return r;
}

double DecayRate::operator()(double t) const {
  switch (profile_) {
    case Profile::constant:
      return param_;
    case Profile::inverse_linear:
      return param_ / (1.0 + t);
    case Profile::general:
      if (t <= t_.front()) return xi_.front();
      if (t >= t_.back()) return xi_.back();
      return interp_linear(t_, xi_, t);
  }
  return 0.0;
}

double DecayRate::integral(double t) const {
  switch (profile_) {
    case Profile::constant:
      return param_ * t;
    case Profile::inverse_linear:
      return param_ * std::log1p(t);
    case Profile::general: {
      if (t <= t_.front()) return xi_.front() * (t - 0.0);
      if (t >= t_.back())
        return cum_.back() + xi_.back() * (t - t_.back()) +
               xi_.front() * t_.front();
      auto it = std::upper_bound(t_.begin(), t_.end(), t);
      std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
      double v = interp_linear(t_, xi_, t);
      return xi_.front() * t_.front() + cum_[i] + 0.5 * (xi_[i] + v) * (t - t_[i]);
    }
  }
  return 0.0;
}

bool DecayRate::non_increasing(const std::vector<double>& grid, double rel_tol) const {
  double scale = std::abs((*this)(grid.empty() ? 0.0 : grid.front()));
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if ((*this)(grid[i + 1]) > (*this)(grid[i]) + rel_tol * scale) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<double> default_omega_grid() {
  std::vector<double> w(200);
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = 50.0 * static_cast<double>(i) / static_cast<double>(w.size() - 1);
  return w;
}

std::vector<double> cosine_transform(const Kernel& k, const std::vector<double>& omega_grid) {
  return k.cosine(omega_grid);
}

AdmissibilityReport check_admissibility(const Kernel& k,
                                        const std::optional<DecayRate>& xi,
                                        const std::vector<double>& omega_grid) {
  AdmissibilityReport rep;

  if (k.integrable() && !omega_grid.empty()) {
    std::vector<double> mc = k.cosine(omega_grid);
    auto it = std::min_element(mc.begin(), mc.end());
    rep.min_cosine = *it;
    rep.min_cosine_omega = omega_grid[static_cast<std::size_t>(it - mc.begin())];
    rep.cosine_positive = !k.degenerate() && rep.min_cosine > 0.0;
  } else {
    rep.min_cosine = std::numeric_limits<double>::quiet_NaN();
    rep.cosine_positive = false;
  }

  // Sample grid for the pointwise conditions, geometric toward the origin.
  SegmentedGrid tg = SegmentedGrid::refine_origin(k.tau_max(), 10, 32);
  const std::vector<double>& taus = tg.nodes();

  double scale1 = std::abs(k.dmu(0.0));
  double scale2 = std::abs(k.d2mu(0.0));
  if (!(scale1 > 0.0)) scale1 = std::max(1e-300, k.mu0());
  if (!(scale2 > 0.0)) scale2 = scale1;

  rep.dmu_negative = true;
  rep.d2mu_nonneg = true;
  rep.derivatives_ok = true;

  std::vector<double> ratio(taus.size(), 0.0);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    double d1 = k.dmu(taus[i]);
    double d2 = k.d2mu(taus[i]);
    if (!std::isfinite(d1) || !std::isfinite(d2)) {
      rep.derivatives_ok = false;
      break;
    }
    if (!(d1 < 0.0)) rep.dmu_negative = false;
    if (d2 < -1e-12 * scale2) rep.d2mu_nonneg = false;
    ratio[i] = (d1 < 0.0) ? d2 / (-d1) : std::numeric_limits<double>::quiet_NaN();
  }

  if (!rep.derivatives_ok || !rep.dmu_negative) {
    rep.ratio_bound_ok = false;
    rep.decay_class = DecayClass::other;
    return rep;
  }

  // Largest non-increasing rate below the pointwise ratio (running minimum).
  std::vector<double> envelope(ratio.size());
  double run = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    run = std::min(run, ratio[i]);
    envelope[i] = run;
  }

  DecayRate tight = DecayRate::sampled(taus, envelope);
  double mean = 0.0, lo = envelope.front(), hi = envelope.front();
  double mean_g = 0.0, lo_g = 0.0, hi_g = 0.0;
  for (std::size_t i = 0; i < envelope.size(); ++i) {
    mean += envelope[i];
    lo = std::min(lo, envelope[i]);
    hi = std::max(hi, envelope[i]);
    double g = envelope[i] * (1.0 + taus[i]);
    mean_g += g;
    if (i == 0) lo_g = hi_g = g;
    lo_g = std::min(lo_g, g);
    hi_g = std::max(hi_g, g);
  }
  mean /= static_cast<double>(envelope.size());
  mean_g /= static_cast<double>(envelope.size());

  if (mean > 0.0 && (hi - lo) <= 1e-3 * mean) {
    tight = DecayRate::constant(mean);
    rep.decay_class = DecayClass::exponential;
  } else if (mean_g > 0.0 && (hi_g - lo_g) <= 1e-3 * mean_g) {
    tight = DecayRate::inverse_linear(mean_g);
    rep.decay_class = DecayClass::polynomial;
  } else {
    rep.decay_class = DecayClass::other;
  }
  rep.tightest_xi = tight;

  const DecayRate& use = xi ? *xi : *rep.tightest_xi;
  rep.ratio_bound_ok = true;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    double d1 = k.dmu(taus[i]);
    double d2 = k.d2mu(taus[i]);
    // d2 >= -xi * d1 with a small relative slack for the equality case
    if (d2 - use(taus[i]) * (-d1) < -1e-9 * scale2) {
      rep.ratio_bound_ok = false;
      break;
    }
  }
  return rep;
}

double total_viscosity(const Kernel& k) { return k.total_viscosity(); }

}  // namespace memflow
