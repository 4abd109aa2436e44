#pragma once

#include <array>
#include <memory>
#include <vector>

namespace memflow {

enum class MeshKind { channel1d, periodic2d };
enum class Stagger { node, cell };

// channel1d: interval [0, L], M cells, M+1 nodes, Dirichlet ends. Velocity
// lives on nodes; gradients, states and sources live on cell midpoints.
// periodic2d: L x L box, M x M collocated nodes, spectral derivatives.
class Mesh {
 public:
  static std::shared_ptr<const Mesh> channel(double length, int cells);
  static std::shared_ptr<const Mesh> periodic(double length, int cells_per_side);
  ~Mesh();

  MeshKind kind() const { return kind_; }
  double length() const { return L_; }
  int cells_per_side() const { return M_; }
  double spacing() const { return L_ / M_; }

  int point_count(Stagger s) const;
  double node_coord(int m) const;                 // channel
  double cell_coord(int m) const;                 // channel midpoint
  std::array<double, 2> node_xy(int idx) const;   // periodic
  double cell_measure() const;                    // h or h^2

  // Quadrature weight of one point for integrals over the domain.
  double quad_weight(Stagger s, int idx) const;

  struct Spectral;           // periodic transforms, created on first use
  Spectral& spectral() const;

 private:
  Mesh(MeshKind k, double L, int M);
  MeshKind kind_;
  double L_;
  int M_;
  mutable std::unique_ptr<Spectral> spectral_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

// Value field with one or more components stored component-major.
class Field {
 public:
  Field() = default;
  Field(MeshPtr mesh, Stagger stagger, int ncomp);

  const MeshPtr& mesh() const { return mesh_; }
  Stagger stagger() const { return stagger_; }
  int ncomp() const { return ncomp_; }
  int points() const { return npts_; }

  double* comp(int c) { return data_.data() + static_cast<std::size_t>(c) * npts_; }
  const double* comp(int c) const {
    return data_.data() + static_cast<std::size_t>(c) * npts_;
  }
  double& at(int c, int i) { return data_[static_cast<std::size_t>(c) * npts_ + i]; }
  double at(int c, int i) const { return data_[static_cast<std::size_t>(c) * npts_ + i]; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  void fill(double v);
  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);

 private:
  MeshPtr mesh_;
  Stagger stagger_ = Stagger::node;
  int ncomp_ = 0;
  int npts_ = 0;
  std::vector<double> data_;
};

// Component conventions:
//   channel1d : scalars; tensors are represented by their single active
//               (y,x) component.
//   periodic2d: vectors (x, y); full tensors (xx, xy, yx, yy) with
//               T:G = sum T_lm G_lm; symmetric tensors (xx, xy, yy) with
//               Frobenius weights (1, 2, 1).
inline constexpr std::array<double, 3> kSymWeights{1.0, 2.0, 1.0};

// Velocity gradient: channel node scalar -> cell scalar du/dy;
// periodic vector -> full tensor, (grad v)_lm = d_l v_m, spectral.
Field gradient(const Field& v);

// Symmetrized rate of strain. channel: the (y,x) component = gradient/2;
// periodic: sym part of the gradient as a 3-component field.
Field strain_rate(const Field& v);

// Divergence of a tensor field: (div T)_m = d_l T_lm.
// channel: cell scalar -> node scalar (zero at the Dirichlet ends);
// periodic: full tensor -> vector, spectral.
Field divergence(const Field& tensor);

// Divergence of a vector field (periodic only; diagnostic for the
// incompressibility constraint).
Field divergence_of_vector(const Field& v);

// Leray projection onto discretely divergence-free fields (periodic).
Field project_divfree(const Field& v);

// Domain integral of the componentwise product; weights default to 1 per
// component (pass kSymWeights for symmetric 3-component tensors).
double inner(const Field& a, const Field& b);
double inner(const Field& a, const Field& b, const std::vector<double>& comp_weights);

struct ForcingDecomposition {
  Field solenoidal;     // vector
  Field irrotational;   // vector
  Field stream;         // scalar a with f_s = perp-grad a
  Field potential;      // scalar phi with f_irr = grad phi
  std::array<double, 2> removed_mean{0.0, 0.0};
  bool mean_removed = false;

  // Skew tensor A (full components) with div A = solenoidal part.
  Field skew_tensor() const;
};

// Spectral Helmholtz split of a periodic vector field, zero-mean gauge.
ForcingDecomposition helmholtz_decompose(const Field& f);

// J = I0 - A, componentwise on matching meshes. channel: cell scalars;
// periodic: symmetric I0 (3 comps) minus skew A (full) -> full tensor.
Field effective_state_source(const Field& i0_slice, const Field& skew);

Field sym_to_full(const Field& sym3);

}  // namespace memflow
