#include "dirac/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

namespace dirac {

namespace {

using State = std::array<double, 8>;

State pack(const Mat2& m) {
  return {m.a11.real(), m.a11.imag(), m.a12.real(), m.a12.imag(),
          m.a21.real(), m.a21.imag(), m.a22.real(), m.a22.imag()};
}

Mat2 unpack(const State& s) {
  return {{s[0], s[1]}, {s[2], s[3]}, {s[4], s[5]}, {s[6], s[7]}};
}

double seg_distance(Cplx a, Cplx b) {
  Cplx d = b - a;
  double u = std::clamp(-std::real(a * std::conj(d)) / std::norm(d), 0.0, 1.0);
  return std::abs(a + u * d);
}

}  // namespace

Mat2 OdeSystem::coefficient(Cplx x) const {
  Mat2 c = (mu / x) * mat::J;
  if (kind == SystemKind::full && q && !q->is_zero()) c += q->Q(x.real());
  return c;
}

Mat2 OdeSystem::rhs(Cplx x) const {
  // B Y' = (spectral - coefficient) Y, B^{-1} = -B
  return -1.0 * (mat::B * (spectral() * mat::I - coefficient(x)));
}

void ContourSpec::validate() const {
  if (waypoints.size() < 2) throw Error(ErrorCode::InvalidArgument, "contour needs 2 waypoints");
  if (!(min_distance > 0)) throw Error(ErrorCode::InvalidArgument, "min distance must be > 0");
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if (waypoints[i] == waypoints[i + 1])
      throw Error(ErrorCode::InvalidArgument, "consecutive waypoints coincide");
    if (seg_distance(waypoints[i], waypoints[i + 1]) < min_distance)
      throw Error(ErrorCode::DomainViolation, "contour passes too close to the singularity");
  }
}

double ContourSpec::length() const {
  double len = 0;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) len += std::abs(waypoints[i + 1] - waypoints[i]);
  return len;
}

void IntegratorConfig::validate() const {
  if (!(rtol > 0) || !(atol > 0) || max_steps < 1)
    throw Error(ErrorCode::InvalidArgument, "integrator tolerances must be > 0");
  if (order != 5) throw Error(ErrorCode::InvalidArgument, "only the 5(4) pair is available");
}

IntegrationResult integrate(const OdeSystem& sys, const ContourSpec& contour, const Mat2& Y0,
                            const IntegratorConfig& cfg) {
  contour.validate();
  cfg.validate();
  if (sys.kind == SystemKind::full)
    for (auto w : contour.waypoints)
      if (w.imag() != 0.0 || !(w.real() > 0))
        throw Error(ErrorCode::DomainViolation, "system (1) is integrated on the positive axis only");

  namespace ode = boost::numeric::odeint;
  ode::runge_kutta_dopri5<State> stepper;
  const double floor = 1e-12 * contour.length();
  IntegrationResult res;
  State y = pack(Y0);

  for (std::size_t seg = 0; seg + 1 < contour.waypoints.size(); ++seg) {
    const Cplx a = contour.waypoints[seg], b = contour.waypoints[seg + 1];
    const double L = std::abs(b - a);
    const Cplx dir = (b - a) / L;
    auto f = [&](const State& s, State& ds, double t) {
      Mat2 d = (sys.rhs(a + t * dir) * unpack(s)) * dir;
      ds = pack(d);
    };
    double t = 0, dt = std::min(L, 0.01);
    State dydt, out, dout, err;
    f(y, dydt, t);
    while (t < L) {
      if (++res.steps > cfg.max_steps)
        throw Error(ErrorCode::StepLimitExceeded, std::to_string(cfg.max_steps) + " steps");
      dt = std::min(dt, L - t);
      stepper.do_step(f, y, dydt, t, out, dout, dt, err);
      double e = 0;
      for (int i = 0; i < 8; ++i)
        e = std::max(e, std::abs(err[i]) /
                            (cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(out[i]))));
      if (e <= 1.0) {
        t += dt;
        y = out;
        dydt = dout;
        dt *= std::clamp(0.9 * std::pow(std::max(e, 1e-10), -0.2), 0.2, 5.0);
      } else {
        ++res.rejected;
        dt *= std::clamp(0.9 * std::pow(e, -0.25), 0.1, 0.9);
        if (dt < floor) {
          std::ostringstream os;
          os << "step collapsed to " << dt << " near x = " << (a + t * dir);
          throw Error(ErrorCode::StiffnessSuspected, os.str());
        }
      }
    }
  }
  res.Y = unpack(y);
  return res;
}

namespace {

void check_stencil(Cplx x, const OdeSystem& sys, double h, Cplx dir) {
  if (!(h > 0)) throw Error(ErrorCode::InvalidArgument, "stencil step must be > 0");
  if (std::abs(x) <= 2.5 * h)
    throw Error(ErrorCode::StencilOutOfDomain, "stencil reaches the singularity");
  if (sys.kind == SystemKind::full && (x.imag() != 0.0 || dir != 1.0 || x.real() <= 2.0 * h))
    throw Error(ErrorCode::StencilOutOfDomain, "system (1) stencil must stay on the positive axis");
}

template <class V, class F>
V derivative(const F& Y, Cplx x, double h, Cplx dir) {
  Cplx s = h * dir;
  return (1.0 / (12.0 * s)) * (Y(x - 2.0 * s) - 8.0 * Y(x - s) + 8.0 * Y(x + s) - Y(x + 2.0 * s));
}

}  // namespace

double residual(const std::function<Mat2(Cplx)>& Y, Cplx x, const OdeSystem& sys, double h,
                Cplx dir) {
  check_stencil(x, sys, h, dir);
  Mat2 d = derivative<Mat2>(Y, x, h, dir);
  Mat2 r = mat::B * d + sys.coefficient(x) * Y(x) - sys.spectral() * Y(x);
  return norm_inf(r);
}

double residual(const std::function<Vec2(Cplx)>& y, Cplx x, const OdeSystem& sys, double h,
                Cplx dir) {
  check_stencil(x, sys, h, dir);
  Vec2 d = derivative<Vec2>(y, x, h, dir);
  Vec2 v = y(x);
  Vec2 r = mat::B * d + sys.coefficient(x) * v - sys.spectral() * v;
  return norm_inf(r);
}

}  // namespace dirac
