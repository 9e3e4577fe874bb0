#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirac/fault.hpp"
#include "dirac/model.hpp"
#include "dirac/quadrature.hpp"

namespace dirac {

namespace {

// (iI -+ B)/(2i)
const Mat2 kPminus = (kI * mat::I - mat::B) * (1.0 / (2.0 * kI));
const Mat2 kPplus = (kI * mat::I + mat::B) * (1.0 / (2.0 * kI));

// g^j = P_const + P_osc e^{2 R_j (t - x)}
const Mat2& p_const(int j) { return j == 1 ? kPminus : kPplus; }
const Mat2& p_osc(int j) {
  if (j == 2 && fault::on(fault::Kind::g2_kernel)) return kPplus;
  return j == 1 ? kPplus : kPminus;
}

// (mu/t^2)(J + mu B)
Mat2 kernel_m(Cplx mu, Cplx t) { return (mat::J + mu * mat::B) * (mu / (t * t)); }

// (I + mu J/(2t)) / (1 - mu^2/(4t^2))
Mat2 amp(Cplx mu, Cplx t) {
  Cplx d = 1.0 - mu * mu / (4.0 * t * t);
  return (mat::I + (mu / (2.0 * t)) * mat::J) * (1.0 / d);
}

// Coefficients a_n of z_j ~ sum a_n x^{-n}, truncated where |a_n| r^{-n} is smallest.
std::vector<Vec2> asymptotic_terms(int j, Cplx mu, double r, double* last) {
  const Cplx R = jost_R(j);
  const Vec2 z0 = jost_z0(j), rj = jost_z0(3 - j);
  std::vector<Vec2> a{z0};
  Cplx beta = -mu / (2.0 * R);
  double prev = 1.0;
  for (int n = 1; n < 400; ++n) {
    Cplx alpha = mu * beta / double(n);
    Vec2 an = alpha * z0 + beta * rj;
    double size = norm_inf(an) * std::pow(r, -n);
    if (size > prev) break;
    a.push_back(an);
    prev = size;
    if (size < 1e-18) break;
    beta *= (double(n) * n - mu * mu) / (2.0 * R * double(n));
  }
  if (last) *last = prev;
  return a;
}

Vec2 sum_terms(const std::vector<Vec2>& a, Cplx x) {
  Vec2 s{};
  Cplx inv = 1.0 / x, p = 1.0;
  for (const auto& an : a) {
    s += p * an;
    p *= inv;
  }
  return s;
}

// z_j at waypoints[0] from the integral equation on the chain waypoints[0..n],
// with the part beyond the last waypoint taken from the large-|t| expansion.
JostValue solve_chain(int j, const std::vector<Cplx>& way, Cplx mu, const PicardConfig& cfg) {
  const Cplx x = way.front(), tT = way.back();
  const Cplx R = jost_R(j), c = 2.0 * R;
  const Vec2 z0 = jost_z0(j);
  const Mat2 Pc = p_const(j), Po = p_osc(j);

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < way.size(); ++i) {
    auto seg = segment_panels(way[i], way[i + 1], 1.0, 0.25);
    panels.insert(panels.end(), seg.begin(), seg.end());
  }
  QuadratureGrid grid(std::move(panels), 16);
  const auto& t = grid.nodes();
  const std::size_t n = t.size();

  // Tail beyond tT: constant part along the outward ray, oscillatory part
  // along the steepest-descent direction.
  const auto terms = asymptotic_terms(j, mu, std::abs(tT), nullptr);
  Vec2 sum{};
  {
    Cplx inv = 1.0 / tT, p = inv;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      sum += (p / double(k + 1)) * terms[k];
      p *= inv;
    }
  }
  const Vec2 tail_c = mu * ((mat::J + mu * mat::B) * sum);
  Vec2 tail_o{};
  {
    const Cplx dir = j == 1 ? kI : -kI;
    const auto& rule = GaussLegendre::get(16);
    for (int q = 0; q < 25; ++q) {
      for (int k = 0; k < 16; ++k) {
        double tau = q + 0.5 * (rule.nodes()[k] + 1.0);
        Cplx s = tT + dir * tau;
        Vec2 zs = sum_terms(terms, s);
        tail_o += (0.5 * rule.weights()[k] * std::exp(-2.0 * tau) * dir) * (kernel_m(mu, s) * zs);
      }
    }
  }

  std::vector<Mat2> A(n), M(n);
  std::vector<Cplx> decay(n);
  for (std::size_t k = 0; k < n; ++k) {
    A[k] = amp(mu, t[k]);
    M[k] = kernel_m(mu, t[k]);
    decay[k] = std::exp(c * (tT - t[k]));
  }
  std::vector<Vec2> h(n);
  auto apply = [&](const std::vector<Vec2>& z) {
    for (std::size_t k = 0; k < n; ++k) h[k] = M[k] * z[k];
  };
  auto step = [&](const std::vector<Vec2>& z) {
    apply(z);
    auto sc = sweep_backward(grid, h, 0.0);
    auto so = sweep_backward(grid, h, c);
    std::vector<Vec2> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      Vec2 in = Pc * (sc.node[k] + tail_c) + Po * (so.node[k] + decay[k] * tail_o);
      out[k] = A[k] * (z0 - 0.5 * in);
    }
    return out;
  };
  std::vector<Vec2> init(n);
  for (std::size_t k = 0; k < n; ++k) init[k] = A[k] * z0;
  auto res = picard_solve(std::move(init), step, cfg);

  apply(res.state);
  auto sc = sweep_backward(grid, h, 0.0);
  auto so = sweep_backward(grid, h, c);
  Vec2 in = Pc * (sc.boundary[0] + tail_c) + Po * (so.boundary[0] + std::exp(c * (tT - x)) * tail_o);
  JostValue v;
  v.j = j;
  v.z = amp(mu, x) * (z0 - 0.5 * in);
  v.e = std::exp(R * x) * v.z;
  v.iterations = res.iterations;
  v.residual = res.residual;
  return v;
}

double far_radius(const PicardConfig& cfg, double r) { return std::max(cfg.tail_cutoff, 2.0 * r); }

std::vector<Cplx> horizontal_chain(Cplx x, double W) {
  double need = W * W - x.imag() * x.imag();
  double L = need > 0 ? std::sqrt(need) - x.real() : 0.0;
  L = std::max(L, 1.0);
  return {x, x + L};
}

bool sector_ok(int j, double phi, double delta0) {
  return j == 1 ? phi >= -kPi + delta0 - 1e-12 : phi <= kPi - delta0 + 1e-12;
}

}  // namespace

Cplx jost_R(int j) { return j == 1 ? kI : -kI; }
Vec2 jost_z0(int j) { return {jost_R(j), 1.0}; }

Mat2 g_kernel(int j, Cplx x, Cplx t) {
  return p_const(j) + std::exp(2.0 * jost_R(j) * (t - x)) * p_osc(j);
}

double jost_x0(const Mu& mu, double delta0) {
  double m = std::abs(mu.value());
  return 4.0 * kPi * m * (1.0 + m) / std::sin(delta0);
}

Vec2 jost_asymptotic(int j, Cplx x, const Mu& mu, double* err) {
  auto a = asymptotic_terms(j, mu.value(), std::abs(x), err);
  return sum_terms(a, x);
}

JostValue jost_radial(int j, const BranchPoint& x, const Mu& mu, const PicardConfig& cfg) {
  if (j != 1 && j != 2) throw Error(ErrorCode::InvalidArgument, "j must be 1 or 2");
  const double phi = x.phi();
  bool ok = j == 1 ? phi >= 0.0 : (phi <= 0.0 || phi == kPi);
  if (!ok) throw Error(ErrorCode::DomainViolation, "Im x has the wrong sign for the radial contour");
  if (!(x.r() > std::abs(mu.value())))
    throw Error(ErrorCode::DomainViolation, "radial contour needs |x| > |mu|");
  const Cplx xv = x.value();
  const double W = far_radius(cfg, x.r());
  return solve_chain(j, {xv, xv * (W / x.r())}, mu.value(), cfg);
}

JostValue jost_horizontal(int j, const BranchPoint& x, const Mu& mu, double delta0,
                          const PicardConfig& cfg) {
  if (j != 1 && j != 2) throw Error(ErrorCode::InvalidArgument, "j must be 1 or 2");
  if (!(delta0 > 0 && delta0 < kPi))
    throw Error(ErrorCode::InvalidArgument, "delta0 must lie in (0, pi)");
  if (std::abs(x.phi()) > kPi - delta0 + 1e-12)
    throw Error(ErrorCode::DomainViolation, "horizontal contour needs |arg x| <= pi - delta0");
  if (x.r() < jost_x0(mu, delta0) * (1.0 - 1e-12))
    throw Error(ErrorCode::DomainViolation, "horizontal contour needs |x| >= x0");
  const double W = far_radius(cfg, x.r());
  return solve_chain(j, horizontal_chain(x.value(), W), mu.value(), cfg);
}

JostSolution::JostSolution(const Mu& mu, double delta0, PicardConfig cfg)
    : mu_(mu), delta0_(delta0), x0_(jost_x0(mu, delta0)), cfg_(cfg) {
  cfg_.validate();
}

Vec2 JostSolution::z(int j, const BranchPoint& x) const {
  if (!sector_ok(j, x.phi(), delta0_)) {
    std::ostringstream os;
    os << "arg x = " << x.phi() << " outside the sector of z_" << j;
    throw Error(ErrorCode::DomainViolation, os.str());
  }
  const double m = std::abs(mu_.value());
  if (x.r() >= cfg_.tail_cutoff) return jost_asymptotic(j, x.value(), mu_);
  const double phi = x.phi();
  bool radial = j == 1 ? phi >= 0.0 : (phi <= 0.0 || phi == kPi);
  if (radial) {
    if (!(x.r() > m + 1.0)) throw Error(ErrorCode::DomainViolation, "|x| too small for Jost");
    return jost_radial(j, x, mu_, cfg_).z;
  }
  const Cplx xv = x.value();
  double dist = xv.real() >= 0 ? x.r() : std::abs(xv.imag());
  if (!(dist > m + 1.0))
    throw Error(ErrorCode::DomainViolation, "horizontal contour passes too close to 0");
  return solve_chain(j, horizontal_chain(xv, far_radius(cfg_, x.r())), mu_.value(), cfg_).z;
}

Vec2 JostSolution::e(int j, const BranchPoint& x) const {
  return std::exp(jost_R(j) * x.value()) * z(j, x);
}

Mat2 JostSolution::e_matrix(const BranchPoint& x) const {
  return Mat2::from_columns(e(1, x), e(2, x));
}

}  // namespace dirac
