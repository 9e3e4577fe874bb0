#include <algorithm>
#include <cmath>

#include "dirac/model.hpp"

namespace dirac {

namespace {
constexpr int kSeriesOrder = 300;
}

const char* to_string(StokesRole r) {
  switch (r) {
    case StokesRole::gamma0: return "gamma0";
    case StokesRole::beta0: return "beta0";
    case StokesRole::gamma_lambda: return "gamma_lambda";
    case StokesRole::beta_lambda: return "beta_lambda";
  }
  return "unknown";
}

double default_matching_point(const Mu& mu) { return std::max(6.0, 3.0 * std::abs(mu.value())); }

StokesMatrix compute_gamma0(const Mu& mu, const Normalization& norm, const ModelConfig& cfg) {
  const double xm = cfg.matching_point > 0 ? cfg.matching_point : default_matching_point(mu);
  SeriesSolution s(mu, norm, kSeriesOrder);
  const BranchPoint x(xm, 0.0);
  Mat2 C, e;
  try {
    C = eval_C(x, s, cfg.series_tol);
    JostSolution jost(mu, cfg.delta0, cfg.picard);
    e = jost.e_matrix(x);
  } catch (const Error& err) {
    throw Error(ErrorCode::MatchingPointUnavailable, err.what());
  }
  return {mat2_inverse(C) * e, StokesRole::gamma0, std::nullopt};
}

StokesMatrix compute_beta0(const StokesMatrix& gamma0) {
  if (gamma0.role != StokesRole::gamma0)
    throw Error(ErrorCode::InvalidArgument, "compute_beta0 expects a gamma0 matrix");
  return {mat2_inverse(gamma0.m), StokesRole::beta0, std::nullopt};
}

ModelSystem::ModelSystem(const Mu& mu, const Normalization& norm, const ModelConfig& cfg)
    : mu_(mu),
      norm_(norm),
      cfg_(cfg),
      series_(mu, norm, kSeriesOrder),
      jost_(mu, cfg.delta0, cfg.picard),
      xm_(cfg.matching_point > 0 ? cfg.matching_point : default_matching_point(mu)),
      gamma0_(compute_gamma0(mu, norm, cfg)),
      beta0_(compute_beta0(gamma0_)) {}

Mat2 ModelSystem::C(const BranchPoint& x) const { return eval_C(x, series_, cfg_.series_tol); }

Mat2 ModelSystem::C_hat(Cplx w) const { return series_.hat(w, cfg_.series_tol); }

Mat2 ModelSystem::C_hat_stable(Cplx w) const {
  if (std::abs(w) < cfg_.switch_radius) return C_hat(w);
  const BranchPoint b = BranchPoint::from(w);
  if (std::abs(b.phi()) > kPi - cfg_.delta0) return C_hat(w);
  Mat2 c = jost_.e_matrix(b) * beta0_.m;
  Cplx h1 = b.power(-mu_.mu_j(1)), h2 = b.power(-mu_.mu_j(2));
  return {c.a11 * h1, c.a12 * h2, c.a21 * h1, c.a22 * h2};
}

Mat2 ModelSystem::e(const BranchPoint& x) const {
  if (x.r() < cfg_.switch_radius) return C(x) * gamma0_.m;
  if (std::abs(x.phi()) <= kPi - cfg_.delta0 + 1e-12) return jost_.e_matrix(x);
  // near the negative axis only the recessive column has its Jost sector
  Mat2 out = C(x) * gamma0_.m;
  const int j = x.phi() > 0 ? 1 : 2;
  if (std::abs(x.value().imag()) > 1.0) out.set_col(j, jost_.e(j, x));
  return out;
}

Vec2 ModelSystem::z(int j, const BranchPoint& x) const {
  if (x.r() >= cfg_.switch_radius) return jost_.z(j, x);
  return std::exp(-jost_R(j) * x.value()) * e(x).col(j);
}

Lemma1Defects check_lemma1(const BranchPoint& x, const ModelSystem& model) {
  if (!(x.phi() > 0.0)) throw Error(ErrorCode::DomainViolation, "symmetry check needs arg x in (0, pi]");
  const BranchPoint mx = x.negated();
  Lemma1Defects d;
  if (x.r() >= model.config().switch_radius) {
    // e_1(x) and e_2(-x) share the factor e^{ix}; compare the z parts.
    const auto& cfg = model.config().picard;
    Vec2 z1 = jost_radial(1, x, model.mu(), cfg).z;
    Vec2 z2 = jost_radial(2, mx, model.mu(), cfg).z;
    d.jost = norm_inf(-1.0 * (mat::K * z2) - z1) / norm_inf(z1);
  } else {
    Vec2 e1 = model.e(x).col(1);
    Vec2 e2 = model.e(mx).col(2);
    d.jost = norm_inf(-1.0 * (mat::K * e2) - e1) / norm_inf(e1);
  }
  Mat2 Cp = model.C(x), Cm = model.C(mx);
  for (int j = 1; j <= 2; ++j) {
    Cplx f = (j == 1 ? -1.0 : 1.0) * std::exp(-kI * kPi * model.mu().mu_j(j));
    Vec2 diff = mat::K * Cm.col(j) - f * Cp.col(j);
    d.series = std::max(d.series, norm_inf(diff) / norm_inf(Cp.col(j)));
  }
  return d;
}

Mat2 eval_model_lambda(double x, Cplx lambda, ModelFamily which, const ModelSystem& model) {
  if (x == 0.0 || lambda == 0.0)
    throw Error(ErrorCode::DomainViolation, "eval_model_lambda needs x != 0 and lambda != 0");
  const BranchPoint w = BranchPoint::from(x * lambda);
  if (which == ModelFamily::e) return model.e(w);
  const BranchPoint inv = BranchPoint::from(1.0 / lambda);
  Mat2 c = model.C(w);
  Cplx h1 = inv.power(model.mu().mu_j(1)), h2 = inv.power(model.mu().mu_j(2));
  return {c.a11 * h1, c.a12 * h2, c.a21 * h1, c.a22 * h2};
}

}  // namespace dirac
