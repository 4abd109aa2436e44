#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace memflow {

// Piecewise-uniform grid: a list of segments, each subdivided into an even
// number of equal panels so composite Simpson (and its oscillatory variant)
// applies segment by segment. Built with geometric refinement toward the
// left end, where memory kernels are steepest, and optional geometric
// coarsening beyond it for slowly decaying tails.
class SegmentedGrid {
 public:
  struct Segment {
    double a = 0.0;       // left end
    double h = 0.0;       // panel width
    int panels = 0;       // even
    std::size_t first = 0;  // index of the segment's first node in nodes()
  };

  // [0, b] split into `segments` pieces with boundaries b/2^k, finest at 0.
  static SegmentedGrid refine_origin(double b, int segments, int panels_per_segment);

  // One segment per consecutive pair of breakpoints.
  static SegmentedGrid from_breakpoints(const std::vector<double>& bounds,
                                        int panels_per_segment);

  // Appends [right, far_end] as doubling segments (each panelled uniformly).
  void extend_geometric(double far_end, int panels_per_segment);

  // Inserts breakpoints (e.g. history discontinuities) by splitting segments.
  void split_at(const std::vector<double>& points);

  const std::vector<Segment>& segments() const { return segs_; }
  const std::vector<double>& nodes() const { return nodes_; }
  double left() const;
  double right() const;

 private:
  void rebuild_nodes();
  std::vector<Segment> segs_;
  std::vector<double> nodes_;  // shared endpoints deduplicated per segment run
};

// Composite Simpson over the grid; f sampled at grid nodes.
double integrate(const SegmentedGrid& g, const std::function<double(double)>& f);
double integrate(const SegmentedGrid& g, const std::vector<double>& fvals);

// Samples f at the grid nodes; segment-boundary nodes are evaluated a hair
// inside their segment so piecewise definitions keep their one-sided values.
std::vector<double> sample_onesided(const SegmentedGrid& g,
                                    const std::function<double(double)>& f);

// Oscillatory pair integrals (int f(s) cos(omega s) ds, int f(s) sin(omega s) ds)
// with f interpolated by the Simpson quadratic on each panel pair and the
// trigonometric weight integrated exactly, so accuracy is uniform in omega
// and the omega -> 0 limit reproduces plain Simpson.
struct OscPair {
  double cos_part = 0.0;
  double sin_part = 0.0;
};
OscPair integrate_oscillatory(const SegmentedGrid& g, const std::vector<double>& fvals,
                              double omega);

// Simpson weights for one uniform run of n+1 nodes (n even) with spacing h.
std::vector<double> simpson_weights(int n, double h);

// cos(omega*(t0 + i*dt)), sin(omega*(t0 + i*dt)) for i = 0..n-1, generated by
// a rotation recurrence resynchronized against libm every 64 steps.
void fill_cos_sin(double omega, double t0, double dt, std::size_t n,
                  double* c, double* s);

}  // namespace memflow
