#include "memflow/quadrature.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace memflow {

namespace {

int even_at_least_2(int n) { return std::max(2, n + (n & 1)); }

}  // namespace

SegmentedGrid SegmentedGrid::refine_origin(double b, int segments,
                                           int panels_per_segment) {
  if (!(b > 0.0)) throw std::invalid_argument("grid extent must be positive");
  segments = std::max(1, segments);
  int m = even_at_least_2(panels_per_segment);

  SegmentedGrid g;
  // boundaries b/2^(segments-1), ..., b/2, b; first segment starts at 0
  std::vector<double> bounds;
  bounds.push_back(0.0);
  for (int k = segments - 1; k >= 0; --k) bounds.push_back(b * std::ldexp(1.0, -k));
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Segment s;
    s.a = bounds[i];
    s.panels = m;
    s.h = (bounds[i + 1] - bounds[i]) / m;
    g.segs_.push_back(s);
  }
  g.rebuild_nodes();
  return g;
}

SegmentedGrid SegmentedGrid::from_breakpoints(const std::vector<double>& bounds,
                                              int panels_per_segment) {
  if (bounds.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  int m = even_at_least_2(panels_per_segment);
  SegmentedGrid g;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    if (!(bounds[i + 1] > bounds[i]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
    Segment s;
    s.a = bounds[i];
    s.panels = m;
    s.h = (bounds[i + 1] - bounds[i]) / m;
    g.segs_.push_back(s);
  }
  g.rebuild_nodes();
  return g;
}

void SegmentedGrid::extend_geometric(double far_end, int panels_per_segment) {
  int m = even_at_least_2(panels_per_segment);
  double r = right();
  if (far_end <= r) return;
  double lo = r;
  while (lo < far_end) {
    double hi = std::min(far_end, 2.0 * std::max(lo, 1e-300));
    if (hi <= lo) break;
    Segment s;
    s.a = lo;
    s.panels = m;
    s.h = (hi - lo) / m;
    segs_.push_back(s);
    lo = hi;
  }
  rebuild_nodes();
}

void SegmentedGrid::split_at(const std::vector<double>& points) {
  for (double p : points) {
    if (!(p > left() && p < right())) continue;
    std::vector<Segment> out;
    for (const Segment& s : segs_) {
      double b = s.a + s.h * s.panels;
      if (p <= s.a + 1e-14 * std::abs(s.a) || p >= b - 1e-14 * std::abs(b) ||
          p <= s.a || p >= b) {
        out.push_back(s);
        continue;
      }
      Segment l, r;
      l.a = s.a;
      l.panels = even_at_least_2(
          static_cast<int>(std::round((p - s.a) / s.h)));
      l.h = (p - s.a) / l.panels;
      r.a = p;
      r.panels = even_at_least_2(
          static_cast<int>(std::round((b - p) / s.h)));
      r.h = (b - p) / r.panels;
      out.push_back(l);
      out.push_back(r);
    }
    segs_ = std::move(out);
  }
  rebuild_nodes();
}

double SegmentedGrid::left() const { return segs_.empty() ? 0.0 : segs_.front().a; }

double SegmentedGrid::right() const {
  if (segs_.empty()) return 0.0;
  const Segment& s = segs_.back();
  return s.a + s.h * s.panels;
}

void SegmentedGrid::rebuild_nodes() {
  nodes_.clear();
  for (Segment& s : segs_) {
    s.first = nodes_.size();
    for (int i = 0; i <= s.panels; ++i) nodes_.push_back(s.a + i * s.h);
  }
}

double integrate(const SegmentedGrid& g, const std::function<double(double)>& f) {
  return integrate(g, sample_onesided(g, f));
}

std::vector<double> sample_onesided(const SegmentedGrid& g,
                                    const std::function<double(double)>& f) {
  std::vector<double> fv(g.nodes().size());
  for (const auto& s : g.segments()) {
    double nudge = 1e-9 * s.h;
    for (int i = 0; i <= s.panels; ++i) {
      double x = s.a + i * s.h;
      if (i == 0) x += nudge;
      if (i == s.panels) x -= nudge;
      fv[s.first + i] = f(x);
    }
  }
  return fv;
}

double integrate(const SegmentedGrid& g, const std::vector<double>& fvals) {
  if (fvals.size() != g.nodes().size())
    throw std::invalid_argument("sample count does not match grid");
  double total = 0.0;
  for (const auto& s : g.segments()) {
    const double* f = fvals.data() + s.first;
    double acc = f[0] + f[s.panels];
    for (int i = 1; i < s.panels; i += 2) acc += 4.0 * f[i];
    for (int i = 2; i < s.panels; i += 2) acc += 2.0 * f[i];
    total += acc * s.h / 3.0;
  }
  return total;
}

namespace {

// Per-panel-pair moments over [-h, h]:
//   W0 = int cos(w u) du, V1 = int u sin(w u) du, W2 = int u^2 cos(w u) du.
struct OscMoments {
  double w0, v1, w2;
};

OscMoments osc_moments(double omega, double h) {
  double th = omega * h;
  OscMoments m;
  if (std::abs(th) < 0.2) {
    double t2 = th * th;
    double sinc = 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
    double v = th / 3.0 * (1.0 - t2 / 10.0 * (1.0 - t2 / 28.0));
    double w = 1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0 - t2 * t2 * t2 / 6480.0;
    m.w0 = 2.0 * h * sinc;
    m.v1 = 2.0 * h * h * v;
    m.w2 = 2.0 * h * h * h * w;
  } else {
    double s = std::sin(th), c = std::cos(th);
    m.w0 = 2.0 * s / omega;
    m.v1 = 2.0 * (s - th * c) / (omega * omega);
    m.w2 = 2.0 * ((th * th - 2.0) * s + 2.0 * th * c) / (omega * omega * omega);
  }
  return m;
}

}  // namespace

OscPair integrate_oscillatory(const SegmentedGrid& g,
                              const std::vector<double>& fvals, double omega) {
  if (fvals.size() != g.nodes().size())
    throw std::invalid_argument("sample count does not match grid");
  if (omega == 0.0) return {integrate(g, fvals), 0.0};

  OscPair out;
  for (const auto& s : g.segments()) {
    const double* f = fvals.data() + s.first;
    OscMoments m = osc_moments(omega, s.h);
    double inv_h2 = 1.0 / (2.0 * s.h * s.h);
    double inv_h = 1.0 / (2.0 * s.h);
    double ci = 0.0, si = 0.0;
    for (int i = 0; i + 2 <= s.panels; i += 2) {
      double f0 = f[i], f1 = f[i + 1], f2 = f[i + 2];
      double center = s.a + (i + 1) * s.h;
      double a = f1;
      double b = (f2 - f0) * inv_h;
      double c = (f2 - 2.0 * f1 + f0) * inv_h2;
      double even = a * m.w0 + c * m.w2;
      double odd = b * m.v1;
      double cm = std::cos(omega * center), sm = std::sin(omega * center);
      ci += cm * even - sm * odd;
      si += sm * even + cm * odd;
    }
    out.cos_part += ci;
    out.sin_part += si;
  }
  return out;
}

std::vector<double> simpson_weights(int n, double h) {
  if (n < 2 || (n & 1)) throw std::invalid_argument("simpson needs even panel count");
  std::vector<double> w(n + 1, 0.0);
  for (int i = 1; i < n; i += 2) w[i] = 4.0;
  for (int i = 2; i < n; i += 2) w[i] = 2.0;
  w[0] = w[n] = 1.0;
  for (double& x : w) x *= h / 3.0;
  return w;
}

void fill_cos_sin(double omega, double t0, double dt, std::size_t n, double* c,
                  double* s) {
  const double cd = std::cos(omega * dt);
  const double sd = std::sin(omega * dt);
  double cr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & 63u) == 0) {
      double ph = omega * (t0 + static_cast<double>(i) * dt);
      cr = std::cos(ph);
      si = std::sin(ph);
    }
    c[i] = cr;
    s[i] = si;
    double cn = cr * cd - si * sd;
    si = cr * sd + si * cd;
    cr = cn;
  }
}

}  // namespace memflow
