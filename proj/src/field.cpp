#include "memflow/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "memflow/simd/simd.hpp"

namespace memflow {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

// ---------------------------------------------------------------- spectral

struct Mesh::Spectral {
  int M;
  double L;
  fftw_complex* buf;
  fftw_plan fwd, inv;
  std::vector<double> kd;  // derivative wavenumbers, Nyquist zeroed
  std::vector<double> kp;  // projection wavenumbers

  Spectral(int m, double l) : M(m), L(l) {
    buf = fftw_alloc_complex(static_cast<std::size_t>(M) * M);
    fwd = fftw_plan_dft_2d(M, M, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    inv = fftw_plan_dft_2d(M, M, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    kd.resize(M);
    kp.resize(M);
    for (int i = 0; i < M; ++i) {
      int w = (i <= M / 2) ? i : i - M;
      kp[i] = 2.0 * kPi / L * w;
      kd[i] = (2 * i == M) ? 0.0 : kp[i];
    }
  }
  ~Spectral() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(buf);
  }

  void forward(const double* in, std::complex<double>* out) {
    std::size_t n = static_cast<std::size_t>(M) * M;
    for (std::size_t p = 0; p < n; ++p) {
      buf[p][0] = in[p];
      buf[p][1] = 0.0;
    }
    fftw_execute(fwd);
    std::memcpy(out, buf, n * sizeof(fftw_complex));
  }

  void inverse(const std::complex<double>* in, double* out) {
    std::size_t n = static_cast<std::size_t>(M) * M;
    std::memcpy(buf, in, n * sizeof(fftw_complex));
    fftw_execute(inv);
    double s = 1.0 / static_cast<double>(n);
    for (std::size_t p = 0; p < n; ++p) out[p] = buf[p][0] * s;
  }
};

// -------------------------------------------------------------------- mesh

Mesh::Mesh(MeshKind k, double L, int M) : kind_(k), L_(L), M_(M) {}
Mesh::~Mesh() = default;

std::shared_ptr<const Mesh> Mesh::channel(double length, int cells) {
  require(length > 0.0 && cells >= 4, "channel mesh needs length > 0 and >= 4 cells");
  return std::shared_ptr<const Mesh>(new Mesh(MeshKind::channel1d, length, cells));
}

std::shared_ptr<const Mesh> Mesh::periodic(double length, int cells_per_side) {
  require(length > 0.0 && cells_per_side >= 4,
          "periodic mesh needs length > 0 and >= 4 cells per side");
  return std::shared_ptr<const Mesh>(new Mesh(MeshKind::periodic2d, length, cells_per_side));
}

int Mesh::point_count(Stagger s) const {
  if (kind_ == MeshKind::channel1d) return s == Stagger::node ? M_ + 1 : M_;
  return M_ * M_;
}

double Mesh::node_coord(int m) const { return spacing() * m; }
double Mesh::cell_coord(int m) const { return spacing() * (m + 0.5); }

std::array<double, 2> Mesh::node_xy(int idx) const {
  int i = idx % M_, j = idx / M_;
  return {spacing() * i, spacing() * j};
}

double Mesh::cell_measure() const {
  double h = spacing();
  return kind_ == MeshKind::channel1d ? h : h * h;
}

double Mesh::quad_weight(Stagger s, int idx) const {
  double m = cell_measure();
  if (kind_ == MeshKind::channel1d && s == Stagger::node)
    return (idx == 0 || idx == M_) ? 0.5 * m : m;
  return m;
}

Mesh::Spectral& Mesh::spectral() const {
  require(kind_ == MeshKind::periodic2d, "spectral transforms need a periodic mesh");
  if (!spectral_) spectral_ = std::make_unique<Spectral>(M_, L_);
  return *spectral_;
}

// ------------------------------------------------------------------- field

Field::Field(MeshPtr mesh, Stagger stagger, int ncomp)
    : mesh_(std::move(mesh)), stagger_(stagger), ncomp_(ncomp) {
  npts_ = mesh_->point_count(stagger_);
  data_.assign(static_cast<std::size_t>(ncomp_) * npts_, 0.0);
}

void Field::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

Field& Field::operator+=(const Field& o) {
  require(o.data_.size() == data_.size(), "field shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require(o.data_.size() == data_.size(), "field shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Field& Field::operator*=(double a) {
  for (double& x : data_) x *= a;
  return *this;
}

// -------------------------------------------------------------- operators

namespace {

using Modes = std::vector<std::complex<double>>;

Modes to_modes(const Field& f, int c) {
  auto& sp = f.mesh()->spectral();
  Modes m(static_cast<std::size_t>(sp.M) * sp.M);
  sp.forward(f.comp(c), m.data());
  return m;
}

void from_modes(const Modes& m, Field& f, int c) {
  f.mesh()->spectral().inverse(m.data(), f.comp(c));
}

// d_x and d_y multipliers applied in place
void apply_ik(Modes& m, const Mesh::Spectral& sp, bool x_dir) {
  for (int j = 0; j < sp.M; ++j)
    for (int i = 0; i < sp.M; ++i) {
      double k = x_dir ? sp.kd[i] : sp.kd[j];
      m[static_cast<std::size_t>(j) * sp.M + i] *= std::complex<double>(0.0, k);
    }
}

}  // namespace

Field gradient(const Field& v) {
  const MeshPtr& mesh = v.mesh();
  if (mesh->kind() == MeshKind::channel1d) {
    require(v.stagger() == Stagger::node && v.ncomp() == 1,
            "channel gradient needs a node scalar");
    Field g(mesh, Stagger::cell, 1);
    double invh = 1.0 / mesh->spacing();
    const double* u = v.comp(0);
    double* out = g.comp(0);
    for (int m = 0; m < g.points(); ++m) out[m] = (u[m + 1] - u[m]) * invh;
    return g;
  }
  require(v.ncomp() == 2, "periodic gradient needs a vector field");
  auto& sp = mesh->spectral();
  Field g(mesh, v.stagger(), 4);  // xx, xy, yx, yy
  for (int c = 0; c < 2; ++c) {
    Modes m = to_modes(v, c);
    Modes mx = m;
    apply_ik(mx, sp, true);
    from_modes(mx, g, c);          // d_x v_c -> comp (x, c)
    apply_ik(m, sp, false);
    from_modes(m, g, 2 + c);       // d_y v_c -> comp (y, c)
  }
  return g;
}

Field strain_rate(const Field& v) {
  const MeshPtr& mesh = v.mesh();
  if (mesh->kind() == MeshKind::channel1d) {
    Field d = gradient(v);
    *&d *= 0.5;  // D_yx = (du/dy)/2
    return d;
  }
  Field g = gradient(v);
  Field d(mesh, v.stagger(), 3);  // xx, xy, yy
  int n = d.points();
  for (int i = 0; i < n; ++i) {
    d.at(0, i) = g.at(0, i);
    d.at(1, i) = 0.5 * (g.at(1, i) + g.at(2, i));
    d.at(2, i) = g.at(3, i);
  }
  return d;
}

Field divergence(const Field& t) {
  const MeshPtr& mesh = t.mesh();
  if (mesh->kind() == MeshKind::channel1d) {
    require(t.stagger() == Stagger::cell && t.ncomp() == 1,
            "channel tensor divergence needs a cell scalar");
    Field d(mesh, Stagger::node, 1);
    double invh = 1.0 / mesh->spacing();
    const double* q = t.comp(0);
    double* out = d.comp(0);
    out[0] = 0.0;
    out[d.points() - 1] = 0.0;
    for (int m = 1; m < d.points() - 1; ++m) out[m] = (q[m] - q[m - 1]) * invh;
    return d;
  }
  require(t.ncomp() == 4, "periodic divergence needs a full tensor");
  auto& sp = mesh->spectral();
  Field d(mesh, t.stagger(), 2);
  // (div T)_m = d_l T_lm; comps (xx, xy, yx, yy)
  for (int m = 0; m < 2; ++m) {
    Modes a = to_modes(t, m);        // T_x m
    Modes b = to_modes(t, 2 + m);    // T_y m
    apply_ik(a, sp, true);
    apply_ik(b, sp, false);
    for (std::size_t p = 0; p < a.size(); ++p) a[p] += b[p];
    from_modes(a, d, m);
  }
  return d;
}

Field divergence_of_vector(const Field& v) {
  require(v.mesh()->kind() == MeshKind::periodic2d && v.ncomp() == 2,
          "vector divergence needs a periodic vector field");
  auto& sp = v.mesh()->spectral();
  Modes a = to_modes(v, 0);
  Modes b = to_modes(v, 1);
  apply_ik(a, sp, true);
  apply_ik(b, sp, false);
  for (std::size_t p = 0; p < a.size(); ++p) a[p] += b[p];
  Field d(v.mesh(), v.stagger(), 1);
  from_modes(a, d, 0);
  return d;
}

Field project_divfree(const Field& v) {
  require(v.mesh()->kind() == MeshKind::periodic2d && v.ncomp() == 2,
          "projection needs a periodic vector field");
  auto& sp = v.mesh()->spectral();
  Modes a = to_modes(v, 0);
  Modes b = to_modes(v, 1);
  for (int j = 0; j < sp.M; ++j)
    for (int i = 0; i < sp.M; ++i) {
      double kx = sp.kp[i], ky = sp.kp[j];
      double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      std::size_t p = static_cast<std::size_t>(j) * sp.M + i;
      std::complex<double> dot = (kx * a[p] + ky * b[p]) / k2;
      a[p] -= kx * dot;
      b[p] -= ky * dot;
    }
  Field out(v.mesh(), v.stagger(), 2);
  from_modes(a, out, 0);
  from_modes(b, out, 1);
  return out;
}

double inner(const Field& a, const Field& b) {
  return inner(a, b, std::vector<double>(a.ncomp(), 1.0));
}

double inner(const Field& a, const Field& b, const std::vector<double>& w) {
  require(a.mesh().get() == b.mesh().get() && a.stagger() == b.stagger() &&
              a.ncomp() == b.ncomp(),
          "inner product needs matching fields");
  require(static_cast<int>(w.size()) == a.ncomp(), "one weight per component");
  const Mesh& mesh = *a.mesh();
  int n = a.points();
  double total = 0.0;
  for (int c = 0; c < a.ncomp(); ++c) {
    double s = simd::dot(a.comp(c), b.comp(c), static_cast<std::size_t>(n));
    if (mesh.kind() == MeshKind::channel1d && a.stagger() == Stagger::node) {
      s -= 0.5 * (a.at(c, 0) * b.at(c, 0) + a.at(c, n - 1) * b.at(c, n - 1));
    }
    total += w[c] * s;
  }
  return total * mesh.cell_measure();
}

Field ForcingDecomposition::skew_tensor() const {
  Field a(stream.mesh(), stream.stagger(), 4);
  int n = a.points();
  for (int i = 0; i < n; ++i) {
    a.at(1, i) = stream.at(0, i);    // A_xy = a
    a.at(2, i) = -stream.at(0, i);   // A_yx = -a
  }
  return a;
}

ForcingDecomposition helmholtz_decompose(const Field& f) {
  require(f.mesh()->kind() == MeshKind::periodic2d && f.ncomp() == 2,
          "helmholtz split needs a periodic vector field");
  auto& sp = f.mesh()->spectral();
  Modes fx = to_modes(f, 0);
  Modes fy = to_modes(f, 1);

  ForcingDecomposition out;
  double n2 = static_cast<double>(fx.size());
  out.removed_mean = {fx[0].real() / n2, fy[0].real() / n2};
  out.mean_removed = std::abs(out.removed_mean[0]) > 1e-14 ||
                     std::abs(out.removed_mean[1]) > 1e-14;
  fx[0] = fy[0] = 0.0;

  Modes sx(fx.size()), sy(fx.size()), ix(fx.size()), iy(fx.size());
  Modes stream(fx.size()), pot(fx.size());
  for (int j = 0; j < sp.M; ++j)
    for (int i = 0; i < sp.M; ++i) {
      std::size_t p = static_cast<std::size_t>(j) * sp.M + i;
      double kx = sp.kp[i], ky = sp.kp[j];
      double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      std::complex<double> dot = (kx * fx[p] + ky * fy[p]) / k2;
      ix[p] = kx * dot;
      iy[p] = ky * dot;
      sx[p] = fx[p] - ix[p];
      sy[p] = fy[p] - iy[p];
      // f_s = perp-grad a: a = -curl(f)/|k|^2
      std::complex<double> curl =
          std::complex<double>(0.0, kx) * fy[p] - std::complex<double>(0.0, ky) * fx[p];
      stream[p] = -curl / k2;
      pot[p] = std::complex<double>(0.0, -1.0) * dot;  // phi = -i (k.f)/|k|^2
    }

  Stagger st = f.stagger();
  out.solenoidal = Field(f.mesh(), st, 2);
  out.irrotational = Field(f.mesh(), st, 2);
  out.stream = Field(f.mesh(), st, 1);
  out.potential = Field(f.mesh(), st, 1);
  from_modes(sx, out.solenoidal, 0);
  from_modes(sy, out.solenoidal, 1);
  from_modes(ix, out.irrotational, 0);
  from_modes(iy, out.irrotational, 1);
  from_modes(stream, out.stream, 0);
  from_modes(pot, out.potential, 0);
  return out;
}

Field sym_to_full(const Field& sym3) {
  require(sym3.ncomp() == 3, "expected a symmetric 3-component tensor");
  Field t(sym3.mesh(), sym3.stagger(), 4);
  int n = t.points();
  for (int i = 0; i < n; ++i) {
    t.at(0, i) = sym3.at(0, i);
    t.at(1, i) = sym3.at(1, i);
    t.at(2, i) = sym3.at(1, i);
    t.at(3, i) = sym3.at(2, i);
  }
  return t;
}

Field effective_state_source(const Field& i0_slice, const Field& skew) {
  require(i0_slice.mesh().get() == skew.mesh().get(), "mesh mismatch");
  if (i0_slice.mesh()->kind() == MeshKind::channel1d) {
    require(i0_slice.ncomp() == 1 && skew.ncomp() == 1 &&
                i0_slice.stagger() == skew.stagger(),
            "channel state source needs matching cell scalars");
    Field j = i0_slice;
    j -= skew;
    return j;
  }
  require(i0_slice.ncomp() == 3 && skew.ncomp() == 4, "periodic J needs sym I0 and full A");
  Field j = sym_to_full(i0_slice);
  j -= skew;
  return j;
}

}  // namespace memflow
