#include "dirac/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dirac {

StokesMatrix compute_gamma0_lambda(Cplx lambda, const ModelSystem& model) {
  if (lambda == 0.0) throw Error(ErrorCode::DomainViolation, "lambda must be nonzero");
  const double x = model.matching_point() / std::abs(lambda);
  Mat2 C = eval_model_lambda(x, lambda, ModelFamily::C, model);
  Mat2 e = eval_model_lambda(x, lambda, ModelFamily::e, model);
  return {mat2_inverse(C) * e, StokesRole::gamma0, lambda};
}

GammaLambdaReport gamma_lambda_report(Cplx lambda, const Potential& q, const ModelSystem& model,
                                      const PerturbedConfig& cfg) {
  BirkhoffSolution U(lambda, q, model, cfg);
  const double a = U.cut().a();
  VolterraSolution S(4.0 * a, lambda, q, model, cfg);
  const Cplx mu = model.mu().value();
  const Cplx c10 = model.norm().c10;
  const Cplx lmu = BranchPoint::from(lambda).power(-mu);

  GammaLambdaReport rep;
  for (int k = 0; k <= 6; ++k) rep.ladder.push_back(0.5 * a * std::pow(2.0, -k));

  Mat2 U0 = U.U_at_zero();
  Mat2 g;  // g_ij = gamma_ij(lambda) lambda^mu
  for (int j = 1; j <= 2; ++j) {
    Cplx g1 = -U0.col(j).y / c10;
    std::vector<Cplx> vals;
    for (double x : rep.ladder) {
      Mat2 Sh = S.S_hat(x);
      Vec2 u = U.U(x).col(j);
      vals.push_back((u.x - g1 * Sh.a11) / (std::pow(x, 2.0 * mu) * Sh.a12));
    }
    Cplx g2 = vals.back();
    for (Cplx v : vals) rep.spread = std::max(rep.spread, std::abs(v - g2) / std::abs(g2));
    if (j == 1) {
      g.a11 = g1;
      g.a21 = g2;
    } else {
      g.a12 = g1;
      g.a22 = g2;
    }
  }
  if (!(rep.spread < 1e-7)) {
    std::ostringstream os;
    os << "x -> 0 limit did not settle: relative spread " << rep.spread;
    throw Error(ErrorCode::ExtrapolationUnstable, os.str());
  }
  rep.gamma = {lmu * g, StokesRole::gamma_lambda, lambda};

  rep.validation = {a / 8, a / 3, 2 * a, 3.5 * a};
  for (double x : rep.validation) {
    Mat2 E = U.E(x), SG = S.S(x) * rep.gamma.m;
    for (int j = 1; j <= 2; ++j)
      rep.matching_defect =
          std::max(rep.matching_defect, norm_inf(E.col(j) - SG.col(j)) / norm_inf(E.col(j)));
  }
  return rep;
}

StokesMatrix compute_gamma_lambda(Cplx lambda, const Potential& q, const ModelSystem& model,
                                  const PerturbedConfig& cfg) {
  return gamma_lambda_report(lambda, q, model, cfg).gamma;
}

StokesMatrix compute_gamma_lambda(Cplx lambda, const Potential& q, const Mu& mu,
                                  const Normalization& norm, const PerturbedConfig& cfg) {
  ModelSystem model(mu, norm);
  return compute_gamma_lambda(lambda, q, model, cfg);
}

StokesMatrix compute_beta_lambda(const StokesMatrix& gamma) {
  if (gamma.role != StokesRole::gamma_lambda)
    throw Error(ErrorCode::InvalidArgument, "beta(lambda) needs a gamma(lambda) matrix");
  return {mat2_inverse(gamma.m), StokesRole::beta_lambda, gamma.lambda};
}

double fit_decay_exponent(const std::vector<double>& scale, const std::vector<double>& value) {
  if (scale.size() != value.size() || scale.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "fit needs >= 2 aligned samples");
  const double n = static_cast<double>(scale.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (!(scale[i] > 0) || !(value[i] > 0))
      throw Error(ErrorCode::InvalidArgument, "log-log fit needs positive samples");
    double x = std::log(scale[i]), y = std::log(value[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

StokesAsymptote verify_theorem6(const std::vector<Cplx>& lambda_ladder, const Potential& q,
                                const ModelSystem& model, const PerturbedConfig& cfg) {
  if (lambda_ladder.size() < 4)
    throw Error(ErrorCode::InvalidArgument, "lambda ladder needs at least 4 rungs");
  const Mu& mu = model.mu();
  const Mat2& g0 = model.gamma0().m;
  StokesAsymptote out;
  out.nu = std::min(1.0, 2.0 * mu.value().real());
  std::vector<double> mods;
  for (Cplx lambda : lambda_ladder) {
    auto rep = gamma_lambda_report(lambda, q, model, cfg);
    out.lambdas.push_back(lambda);
    out.gamma.push_back(rep.gamma);
    out.spread.push_back(rep.spread);
    out.matching_defect.push_back(rep.matching_defect);
    mods.push_back(std::abs(lambda));
    const BranchPoint L = BranchPoint::from(lambda);
    for (int j = 1; j <= 2; ++j) {
      Cplx s = L.power(-mu.mu_j(j));
      const Mat2& g = rep.gamma.m;
      Cplx gj1 = j == 1 ? g.a11 : g.a21, gj2 = j == 1 ? g.a12 : g.a22;
      Cplx h1 = j == 1 ? g0.a11 : g0.a21, h2 = j == 1 ? g0.a12 : g0.a22;
      out.deviation[j - 1][0].push_back(std::abs(gj1 * s - h1));
      out.deviation[j - 1][1].push_back(std::abs(gj2 * s - h2));
      out.column2_defect = std::max(out.column2_defect, std::abs(gj2 * s - h2) / std::abs(h2));
    }
  }
  for (int j = 0; j < 2; ++j) {
    const auto& d = out.deviation[j][0];
    double ref = std::abs(j == 0 ? g0.a11 : g0.a21);
    bool noise = std::any_of(d.begin(), d.end(), [&](double v) { return v < 1e-10 * ref; });
    out.exponent[j] = noise ? std::numeric_limits<double>::quiet_NaN() : fit_decay_exponent(mods, d);
  }
  return out;
}

RemarkSelectors RemarkSelectors::from(double x, Cplx lambda) {
  if (x == 0.0 || lambda == 0.0)
    throw Error(ErrorCode::DomainViolation, "selectors need x != 0 and lambda != 0");
  RemarkSelectors s;
  double t = BranchPoint::from(x * lambda).phi();
  s.l = (t > kPi / 2 || t <= -kPi / 2) ? 1 : -1;
  double al = BranchPoint::from(lambda).phi();
  if (x < 0 && al > kPi / 2)
    s.m = 1;
  else if (x > 0 && al <= -kPi / 2)
    s.m = -1;
  else
    s.m = 0;
  return s;
}

AsymptoticS asymptotic_S(double x, Cplx lambda, const Mu& mu, const StokesMatrix& beta0) {
  if (!(std::abs(x * lambda) >= 1.0))
    throw Error(ErrorCode::DomainViolation, "asymptotics need |x lambda| >= 1");
  const auto sel = RemarkSelectors::from(x, lambda);
  const BranchPoint L = BranchPoint::from(lambda);
  const Cplx em = std::exp(-kI * lambda * x), ep = std::exp(kI * lambda * x);
  AsymptoticS out;
  for (int j = 1; j <= 2; ++j) {
    const Cplx mj = mu.mu_j(j);
    const Cplx b = j == 1 ? beta0.m.a21 : beta0.m.a22;
    const Cplx pre = b * L.power(-mj) * std::exp(2.0 * kI * kPi * mj * double(sel.m));
    const Cplx sg = (j == 1 ? -1.0 : 1.0) * std::exp(kI * kPi * mj * double(sel.l));
    Vec2 v = pre * (em * Vec2{-kI, 1.0} - sg * ep * Vec2{kI, 1.0});
    Vec2 d = (pre * x) * (em * Vec2{-1.0, -kI} - sg * ep * Vec2{-1.0, kI});
    out.value.set_col(j, v);
    out.dlambda.set_col(j, d);
  }
  return out;
}

}  // namespace dirac
