#include "dirac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace dirac {

namespace {

// P_0..P_{m} at s.
std::vector<double> legendre(int m, double s) {
  std::vector<double> p(m + 1);
  p[0] = 1.0;
  if (m >= 1) p[1] = s;
  for (int n = 1; n < m; ++n) p[n + 1] = ((2 * n + 1) * s * p[n] - n * p[n - 1]) / (n + 1);
  return p;
}

// int_{-1}^{s} P_m
std::vector<double> legendre_integral(int m, double s) {
  auto p = legendre(m + 1, s);
  std::vector<double> q(m + 1);
  q[0] = s + 1.0;
  for (int n = 1; n <= m; ++n) q[n] = (p[n + 1] - p[n - 1]) / (2 * n + 1);
  return q;
}

}  // namespace

GaussLegendre::GaussLegendre(int n) : n_(n), x_(n), w_(n), fwd_(n * n), coef_(n * n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order < 2");
  for (int i = 0; i < n; ++i) {
    double s = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = s;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * s * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (s * p1 - p0) / (s * s - 1.0);
      double ds = p1 / dp;
      s -= ds;
      if (std::abs(ds) < 1e-16) break;
    }
    x_[n - 1 - i] = s;
    w_[n - 1 - i] = 2.0 / ((1.0 - s * s) * dp * dp);
  }
  for (int k = 0; k < n; ++k) {
    auto p = legendre(n - 1, x_[k]);
    for (int m = 0; m < n; ++m) coef_[m * n + k] = 0.5 * (2 * m + 1) * w_[k] * p[m];
  }
  for (int i = 0; i < n; ++i) {
    auto row = fwd_row(x_[i]);
    std::copy(row.begin(), row.end(), fwd_.begin() + i * n);
  }
}

const GaussLegendre& GaussLegendre::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendre>(n);
  return *slot;
}

std::vector<double> GaussLegendre::fwd_row(double s) const {
  auto q = legendre_integral(n_ - 1, s);
  std::vector<double> row(n_, 0.0);
  for (int m = 0; m < n_; ++m)
    for (int k = 0; k < n_; ++k) row[k] += coef_[m * n_ + k] * q[m];
  return row;
}

std::vector<double> GaussLegendre::interp_row(double s) const {
  auto p = legendre(n_ - 1, s);
  std::vector<double> row(n_, 0.0);
  for (int m = 0; m < n_; ++m)
    for (int k = 0; k < n_; ++k) row[k] += coef_[m * n_ + k] * p[m];
  return row;
}

Cplx Panel::at(double s) const {
  double u = 0.5 * (s + 1.0);
  return a + (b - a) * (grade == 1.0 ? u : std::pow(u, grade));
}

Cplx Panel::jac(double s) const {
  double u = 0.5 * (s + 1.0);
  return 0.5 * (b - a) * (grade == 1.0 ? 1.0 : grade * std::pow(u, grade - 1.0));
}

double Panel::param(Cplx t) const {
  Cplx d = b - a;
  double u = std::real((t - a) * std::conj(d)) / std::norm(d);
  u = std::clamp(u, 0.0, 1.0);
  if (grade != 1.0) u = std::pow(u, 1.0 / grade);
  return 2.0 * u - 1.0;
}

QuadratureGrid::QuadratureGrid(std::vector<Panel> panels, int order)
    : p_(order), rule_(&GaussLegendre::get(order)), panels_(std::move(panels)) {
  if (panels_.empty()) throw Error(ErrorCode::InvalidArgument, "empty quadrature grid");
  t_.reserve(panels_.size() * p_);
  for (const auto& pn : panels_) {
    for (int k = 0; k < p_; ++k) {
      double s = rule_->nodes()[k];
      t_.push_back(pn.at(s));
      jac_.push_back(pn.jac(s));
      w_.push_back(jac_.back() * rule_->weights()[k]);
    }
  }
}

double QuadratureGrid::length() const {
  double len = 0.0;
  for (auto w : w_) len += std::abs(w);
  return len;
}

std::pair<std::size_t, double> QuadratureGrid::locate(Cplx t) const {
  // Panels are laid end to end along a line; project onto it.
  for (std::size_t p = 0; p < panels_.size(); ++p) {
    const auto& pn = panels_[p];
    Cplx d = pn.b - pn.a;
    double u = std::real((t - pn.a) * std::conj(d)) / std::norm(d);
    if (u <= 1.0 || p + 1 == panels_.size()) return {p, pn.param(t)};
  }
  return {panels_.size() - 1, 1.0};
}

namespace {

std::vector<Panel> geometric_chain(double scale, int geometric, double grade) {
  std::vector<Panel> out;
  double t1 = scale * std::pow(0.25, geometric);
  out.push_back({0.0, t1, grade});
  for (int k = geometric - 1; k >= 0; --k)
    out.push_back({scale * std::pow(0.25, k + 1), scale * std::pow(0.25, k), 1.0});
  return out;
}

}  // namespace

std::vector<Panel> segment_panels(Cplx a, Cplx b, double h, double rel) {
  std::vector<Panel> out;
  double total = std::abs(b - a);
  if (total == 0.0) return out;
  Cplx dir = (b - a) / total;
  double done = 0.0;
  while (done < total * (1.0 - 1e-14)) {
    double len = h;
    if (rel > 0.0) len = std::min(len, rel * std::abs(a + dir * done));
    double next = std::min(total, done + len);
    if (total - next < 0.2 * len) next = total;
    out.push_back({a + dir * done, next == total ? b : a + dir * next, 1.0});
    done = next;
  }
  return out;
}

QuadratureGrid graded_grid(double scale, double end, double h, double grade, int geometric,
                           int order) {
  auto panels = geometric_chain(scale, geometric, grade);
  if (end > scale * (1.0 + 1e-14)) {
    auto tail = segment_panels(scale, end, h, 1.0);
    panels.insert(panels.end(), tail.begin(), tail.end());
  }
  return QuadratureGrid(std::move(panels), order);
}

namespace {

// e^{c z} with the c == 0 shortcut.
inline Cplx ex(Cplx c, Cplx z) { return c == 0.0 ? Cplx(1.0) : std::exp(c * z); }

}  // namespace

template <class V>
Sweep<V> sweep_forward(const QuadratureGrid& g, const std::vector<V>& f, Cplx c) {
  const int p = g.order();
  const auto& rule = g.rule();
  const auto& t = g.nodes();
  const auto& jac = g.jacobians();
  Sweep<V> out;
  out.node.resize(g.size());
  out.boundary.resize(g.panels() + 1);
  V acc{};
  out.boundary[0] = acc;
  std::vector<V> h(p);
  std::vector<Cplx> e_out(p);
  for (std::size_t q = 0; q < g.panels(); ++q) {
    const auto& pn = g.panel(q);
    const std::size_t o = q * p;
    const Cplx m = pn.at(0.0);
    for (int k = 0; k < p; ++k) {
      h[k] = (jac[o + k] * ex(c, m - t[o + k])) * f[o + k];
      e_out[k] = ex(c, t[o + k] - m);
    }
    for (int i = 0; i < p; ++i) {
      V s{};
      for (int k = 0; k < p; ++k) s += rule.fwd(i, k) * h[k];
      out.node[o + i] = ex(c, t[o + i] - pn.a) * acc + e_out[i] * s;
    }
    V full{};
    for (int k = 0; k < p; ++k) full += rule.weights()[k] * h[k];
    acc = ex(c, pn.b - pn.a) * acc + ex(c, pn.b - m) * full;
    out.boundary[q + 1] = acc;
  }
  return out;
}

template <class V>
Sweep<V> sweep_backward(const QuadratureGrid& g, const std::vector<V>& f, Cplx c) {
  const int p = g.order();
  const auto& rule = g.rule();
  const auto& t = g.nodes();
  const auto& jac = g.jacobians();
  Sweep<V> out;
  out.node.resize(g.size());
  out.boundary.resize(g.panels() + 1);
  V acc{};
  out.boundary[g.panels()] = acc;
  std::vector<V> h(p);
  std::vector<Cplx> e_in(p);
  for (std::size_t q = g.panels(); q-- > 0;) {
    const auto& pn = g.panel(q);
    const std::size_t o = q * p;
    const Cplx m = pn.at(0.0);
    for (int k = 0; k < p; ++k) {
      h[k] = (jac[o + k] * ex(c, t[o + k] - m)) * f[o + k];
      e_in[k] = ex(c, m - t[o + k]);
    }
    for (int i = 0; i < p; ++i) {
      V s{};
      for (int k = 0; k < p; ++k) s += rule.bwd(i, k) * h[k];
      out.node[o + i] = ex(c, pn.b - t[o + i]) * acc + e_in[i] * s;
    }
    V full{};
    for (int k = 0; k < p; ++k) full += rule.weights()[k] * h[k];
    acc = ex(c, pn.b - pn.a) * acc + ex(c, m - pn.a) * full;
    out.boundary[q] = acc;
  }
  return out;
}

template <class V>
V forward_at(const QuadratureGrid& g, const std::vector<V>& f, const Sweep<V>& sw, Cplx c,
             std::size_t q, double s) {
  const int p = g.order();
  const auto& pn = g.panel(q);
  const std::size_t o = q * p;
  const Cplx m = pn.at(0.0), x = pn.at(s);
  auto row = g.rule().fwd_row(s);
  V acc{};
  for (int k = 0; k < p; ++k)
    acc += (row[k] * g.jacobians()[o + k] * ex(c, m - g.nodes()[o + k])) * f[o + k];
  return ex(c, x - pn.a) * sw.boundary[q] + ex(c, x - m) * acc;
}

template <class V>
V backward_at(const QuadratureGrid& g, const std::vector<V>& f, const Sweep<V>& sw, Cplx c,
              std::size_t q, double s) {
  const int p = g.order();
  const auto& pn = g.panel(q);
  const std::size_t o = q * p;
  const Cplx m = pn.at(0.0), x = pn.at(s);
  auto row = g.rule().fwd_row(s);
  V acc{};
  for (int k = 0; k < p; ++k)
    acc += ((g.rule().weights()[k] - row[k]) * g.jacobians()[o + k] *
            ex(c, g.nodes()[o + k] - m)) *
           f[o + k];
  return ex(c, pn.b - x) * sw.boundary[q + 1] + ex(c, m - x) * acc;
}

#define DIRAC_SWEEP(V)                                                                       \
  template Sweep<V> sweep_forward<V>(const QuadratureGrid&, const std::vector<V>&, Cplx);  \
  template Sweep<V> sweep_backward<V>(const QuadratureGrid&, const std::vector<V>&, Cplx); \
  template V forward_at<V>(const QuadratureGrid&, const std::vector<V>&, const Sweep<V>&,  \
                           Cplx, std::size_t, double);                                     \
  template V backward_at<V>(const QuadratureGrid&, const std::vector<V>&, const Sweep<V>&, \
                            Cplx, std::size_t, double);

DIRAC_SWEEP(Cplx)
DIRAC_SWEEP(Vec2)
DIRAC_SWEEP(Mat2)

#undef DIRAC_SWEEP

}  // namespace dirac
