#include "dirac/potential.hpp"

#include <algorithm>
#include <cmath>

// boost 1.74 pchip calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "dirac/model.hpp"
#include "dirac/quadrature.hpp"

namespace dirac {

Potential::Potential(std::string name, Fn q1, Fn q2, Fn dq1, Fn dq2, double p0, double support)
    : name_(std::move(name)),
      q1_(std::move(q1)),
      q2_(std::move(q2)),
      dq1_(std::move(dq1)),
      dq2_(std::move(dq2)),
      p0_(p0),
      support_(support) {
  if (!q1_ || !q2_ || !dq1_ || !dq2_)
    throw Error(ErrorCode::InvalidArgument, "potential needs q1, q2 and their derivatives");
}

Potential Potential::zero() {
  auto z = [](double) { return Cplx(0.0); };
  Potential p("zero", z, z, z, z, 0.0, 0.0);
  p.zero_ = true;
  return p;
}

Potential Potential::gauss(Cplx a1, Cplx a2) {
  return Potential(
      "gauss", [a1](double t) { return a1 * std::exp(-t * t); },
      [a2](double t) { return a2 * std::exp(-t * t); },
      [a1](double t) { return -2.0 * t * a1 * std::exp(-t * t); },
      [a2](double t) { return -2.0 * t * a2 * std::exp(-t * t); }, 0.0, 7.0);
}

Potential Potential::decay_pow(Cplx a1, Cplx a2, double p) {
  auto f = [p](double t) { return std::pow(t, p) * std::exp(-t); };
  auto df = [p](double t) { return (p / t - 1.0) * std::pow(t, p) * std::exp(-t); };
  return Potential(
      "decay_pow", [a1, f](double t) { return a1 * f(t); }, [a2, f](double t) { return a2 * f(t); },
      [a1, df](double t) { return a1 * df(t); }, [a2, df](double t) { return a2 * df(t); }, p,
      60.0 + 2.0 * std::max(p, 0.0) * std::log(60.0 + p));
}

Potential Potential::sampled(const std::vector<double>& t, const std::vector<Cplx>& q1,
                             const std::vector<Cplx>& q2) {
  using boost::math::interpolators::pchip;
  if (t.size() < 4 || q1.size() != t.size() || q2.size() != t.size())
    throw Error(ErrorCode::InvalidArgument, "sampled potential needs >= 4 aligned samples");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i] < t[i + 1])) throw Error(ErrorCode::InvalidArgument, "sample points must increase");
  if (!(t.front() >= 0)) throw Error(ErrorCode::InvalidArgument, "sample points must be >= 0");
  auto part = [&](const std::vector<Cplx>& q, bool im) {
    std::vector<double> x(t), y(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) y[i] = im ? q[i].imag() : q[i].real();
    return std::make_shared<pchip<std::vector<double>>>(std::move(x), std::move(y));
  };
  auto r1 = part(q1, false), i1 = part(q1, true), r2 = part(q2, false), i2 = part(q2, true);
  const double lo = t.front(), hi = t.back();
  auto val = [lo, hi](auto re, auto im) {
    return [lo, hi, re, im](double s) {
      if (s > hi) return Cplx(0.0);
      s = std::max(s, lo);
      return Cplx((*re)(s), (*im)(s));
    };
  };
  auto der = [lo, hi](auto re, auto im) {
    return [lo, hi, re, im](double s) {
      if (s > hi || s < lo) return Cplx(0.0);
      return Cplx(re->prime(s), im->prime(s));
    };
  };
  return Potential("sampled", val(r1, i1), val(r2, i2), der(r1, i1), der(r2, i2), 0.0, hi);
}

Mat2 Potential::Q(double t) const {
  Cplx a = q1_(t), b = q2_(t);
  return {a, b, b, -a};
}

Mat2 Potential::dQ(double t) const {
  Cplx a = dq1_(t), b = dq2_(t);
  return {a, b, b, -a};
}

double Potential::cutoff(double tol) const {
  if (zero_) return 0.0;
  double last = 0.0;
  for (double t = 1e-3; t <= std::min(support_, 1e4); t *= 1.05) {
    double m = std::abs(q1_(t)) + std::abs(q2_(t)) + std::abs(dq1_(t)) + std::abs(dq2_(t));
    if (m >= tol) last = t;
  }
  return std::min(support_, std::max(last * 1.05, 1e-3));
}

double Potential::weight_integral(const Mu& mu) const {
  if (zero_) return 0.0;
  const double s = 2.0 * mu.value().real();
  double g = std::max(1.0, 8.0 / std::max(1.0 - s + std::min(p0_, 0.0), 0.05));
  auto inner = graded_grid(1.0, 1.0, 1.0, g, 6, 24);
  double total = 0.0;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    double t = inner.nodes()[k].real();
    total += std::abs(inner.weights()[k]) * std::pow(t, -s) * (std::abs(q1_(t)) + std::abs(q2_(t)));
  }
  double end = cutoff(1e-16);
  if (end > 1.0) {
    QuadratureGrid outer(segment_panels(1.0, end, 1.0), 16);
    for (std::size_t k = 0; k < outer.size(); ++k) {
      double t = outer.nodes()[k].real();
      total += std::abs(outer.weights()[k]) * (std::abs(q1_(t)) + std::abs(q2_(t)));
    }
  }
  return total;
}

}  // namespace dirac
