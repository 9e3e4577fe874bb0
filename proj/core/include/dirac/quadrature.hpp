#pragma once

#include <cstddef>
#include <vector>

#include "dirac/numerics.hpp"

namespace dirac {

// Gauss-Legendre rule on [-1, 1] plus spectral partial-integration matrices.
class GaussLegendre {
 public:
  explicit GaussLegendre(int n);
  static const GaussLegendre& get(int n);

  int size() const { return n_; }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& weights() const { return w_; }
  // fwd(i,k) = int_{-1}^{x_i} l_k,  bwd(i,k) = int_{x_i}^{1} l_k
  double fwd(int i, int k) const { return fwd_[i * n_ + k]; }
  double bwd(int i, int k) const { return w_[k] - fwd_[i * n_ + k]; }
  // int_{-1}^{s} l_k for arbitrary s in [-1, 1].
  std::vector<double> fwd_row(double s) const;
  // l_k(s).
  std::vector<double> interp_row(double s) const;

 private:
  int n_;
  std::vector<double> x_, w_, fwd_;
  std::vector<double> coef_;  // l_k = sum_m coef_[m*n+k] P_m
};

// t(s) = a + (b - a) u^g, u = (s + 1)/2; g > 1 clusters nodes at a.
struct Panel {
  Cplx a, b;
  double grade = 1.0;

  Cplx at(double s) const;
  Cplx jac(double s) const;
  // Inverse map for t on the segment.
  double param(Cplx t) const;
};

// Composite rule on a chain of panels, nodes ordered along the contour.
class QuadratureGrid {
 public:
  QuadratureGrid(std::vector<Panel> panels, int order = 16);

  int order() const { return p_; }
  std::size_t panels() const { return panels_.size(); }
  std::size_t size() const { return t_.size(); }
  const Panel& panel(std::size_t i) const { return panels_[i]; }
  const std::vector<Panel>& panel_list() const { return panels_; }
  const GaussLegendre& rule() const { return *rule_; }
  const std::vector<Cplx>& nodes() const { return t_; }
  const std::vector<Cplx>& jacobians() const { return jac_; }
  const std::vector<Cplx>& weights() const { return w_; }
  Cplx start() const { return panels_.front().a; }
  Cplx end() const { return panels_.back().b; }
  double length() const;
  // Panel containing t (grids laid along a line) and the local parameter.
  std::pair<std::size_t, double> locate(Cplx t) const;

 private:
  int p_;
  const GaussLegendre* rule_;
  std::vector<Panel> panels_;
  std::vector<Cplx> t_, jac_, w_;
};

// Node grid on (0, end] along the real axis: one graded panel at 0, geometric
// panels (ratio 1/4) up to `scale`, then panels no longer than `h` to `end`.
QuadratureGrid graded_grid(double scale, double end, double h, double grade,
                           int geometric = 4, int order = 16);
// Straight chain from a to b with panel length <= h (and <= rel*|t| if rel > 0).
std::vector<Panel> segment_panels(Cplx a, Cplx b, double h, double rel = 0.0);

// Running integrals. `c` adds an exponential factor that must not grow
// along the contour (Re(c (t - s)) <= 0 for t after s).
template <class V>
struct Sweep {
  std::vector<V> node;      // value at each node
  std::vector<V> boundary;  // value at each panel boundary (panels()+1 entries)
};

// node_k = int_{start}^{t_k} e^{c (t_k - t)} f(t) dt
template <class V>
Sweep<V> sweep_forward(const QuadratureGrid& g, const std::vector<V>& f, Cplx c = 0.0);
// node_k = int_{t_k}^{end} e^{c (t - t_k)} f(t) dt
template <class V>
Sweep<V> sweep_backward(const QuadratureGrid& g, const std::vector<V>& f, Cplx c = 0.0);
// Same quantities at an arbitrary point of panel p, local parameter s.
template <class V>
V forward_at(const QuadratureGrid& g, const std::vector<V>& f, const Sweep<V>& sw, Cplx c,
             std::size_t p, double s);
template <class V>
V backward_at(const QuadratureGrid& g, const std::vector<V>& f, const Sweep<V>& sw, Cplx c,
              std::size_t p, double s);

}  // namespace dirac
