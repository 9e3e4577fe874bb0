#include <algorithm>
#include <cmath>

#include "dirac/perturbed.hpp"

namespace dirac {

VolterraSolution::VolterraSolution(double x_max, Cplx lambda, const Potential& q,
                                   const ModelSystem& model, const PerturbedConfig& cfg)
    : lambda_(lambda),
      x_max_(x_max),
      model_(&model),
      mu_(model.mu().value()),
      x_v_(x_max),
      q_(q),
      rk_(cfg.continuation) {
  if (!(x_max > 0)) throw Error(ErrorCode::DomainViolation, "Volterra solution needs x_max > 0");
  if (!q.is_zero() && std::abs(lambda.imag()) * x_max > cfg.volterra_growth)
    x_v_ = cfg.volterra_growth / std::abs(lambda.imag());
  const double scale = std::min({x_v_, 1.0, 1.0 / std::max(std::abs(lambda), 1e-12)});
  const double h = std::min(0.5, 1.0 / std::max(std::abs(lambda), 1e-12));
  grid_ = std::make_unique<QuadratureGrid>(
      graded_grid(scale, x_v_, h, singular_grade(model.mu(), q), 12, cfg.order));
  const auto& t = grid_->nodes();
  const std::size_t n = t.size();
  const std::size_t p = grid_->order();

  std::vector<Mat2> Ch(n), K(n);
  std::vector<Cplx> pw(n);
  for (std::size_t k = 0; k < n; ++k) {
    double tk = t[k].real();
    Ch[k] = model.C_hat_stable(tk * lambda);
    // C^{-1}(t lambda) B Q(t), det C^ = 1
    K[k] = Ch[k].adj() * mat::B * q.Q(tk);
    pw[k] = std::pow(tk, 2.0 * mu_);
  }
  raw_.resize(n);
  integrand_.resize(n);
  auto build = [&](const std::vector<Mat2>& S) {
    for (std::size_t k = 0; k < n; ++k) {
      Vec2 y1 = K[k] * S[k].col(1), y2 = K[k] * S[k].col(2);
      raw_[k] = {y1.x, y2.x, y1.y, y2.y};
      integrand_[k] = {y1.x, pw[k] * y2.x, y1.y / pw[k], y2.y};
    }
  };
  auto assemble = [](const Mat2& C, const Mat2& I, Cplx p) {
    Vec2 in1{I.a11, p * I.a21}, in2{I.a12 / p, I.a22};
    return Mat2::from_columns(C.col(1) + C * in1, C.col(2) + C * in2);
  };
  auto step = [&](const std::vector<Mat2>& S) {
    build(S);
    auto sw = sweep_forward(*grid_, integrand_);
    std::vector<Mat2> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      Mat2 I = sw.node[k];
      if (k < p) I.a12 = pw[k] * near_zero(t[k].real(), raw_);
      out[k] = assemble(Ch[k], I, pw[k]);
    }
    return out;
  };
  PicardConfig pc = cfg.picard;
  pc.contraction_limit = 0;
  auto res = picard_solve(Ch, step, pc);
  iterations_ = res.iterations;
  build(res.state);
  sweep_ = sweep_forward(*grid_, integrand_);

  if (x_v_ < x_max_) {
    const double step = std::max(1.0 / std::abs(lambda), (x_max_ - x_v_) / 64.0);
    ck_x_.push_back(x_v_);
    Mat2 sh = S_volterra(x_v_);
    Cplx h1 = std::pow(x_v_, -mu_), h2 = std::pow(x_v_, mu_);
    ck_S_.push_back({sh.a11 * h1, sh.a12 * h2, sh.a21 * h1, sh.a22 * h2});
    auto sys = OdeSystem::full(model.mu(), lambda_, q_);
    while (ck_x_.back() < x_max_) {
      double a = ck_x_.back(), b = std::min(x_max_, a + step);
      ContourSpec path{{a, b}, 0.5 * x_v_};
      ck_S_.push_back(integrate(sys, path, ck_S_.back(), rk_).Y);
      ck_x_.push_back(b);
    }
  }
}

Mat2 VolterraSolution::S_continued(double x) const {
  auto it = std::upper_bound(ck_x_.begin(), ck_x_.end(), x);
  std::size_t k = std::size_t(it - ck_x_.begin()) - 1;
  if (k + 1 < ck_x_.size() && ck_x_[k + 1] - x < x - ck_x_[k]) ++k;
  if (x == ck_x_[k]) return ck_S_[k];
  ContourSpec path{{ck_x_[k], x}, 0.5 * x_v_};
  return integrate(OdeSystem::full(model_->mu(), lambda_, q_), path, ck_S_[k], rk_).Y;
}

Cplx VolterraSolution::near_zero(double x, const std::vector<Mat2>& raw) const {
  const Panel& pn = grid_->panel(0);
  const auto& rule = grid_->rule();
  const int p = rule.size();
  const double sx = pn.param(x);
  const double half = 0.5 * (sx + 1.0);
  Cplx acc = 0.0;
  for (int m = 0; m < p; ++m) {
    double s = -1.0 + half * (rule.nodes()[m] + 1.0);
    double t = pn.at(s).real();
    Cplx w = rule.weights()[m] * half * pn.jac(s);
    auto row = rule.interp_row(s);
    Cplx f = 0.0;
    for (int k = 0; k < p; ++k) f += row[k] * raw[k].a12;
    acc += w * std::pow(t / x, 2.0 * mu_) * f;
  }
  return acc;
}

Mat2 VolterraSolution::S_hat(double x) const {
  if (!(x >= 0) || x > x_max_ * (1 + 1e-12))
    throw Error(ErrorCode::DomainViolation, "x outside (0, x_max] of the Volterra solution");
  if (x <= x_v_) return S_volterra(x);
  Mat2 s = S_continued(std::min(x, x_max_));
  Cplx h1 = std::pow(x, mu_), h2 = std::pow(x, -mu_);
  return {s.a11 * h1, s.a12 * h2, s.a21 * h1, s.a22 * h2};
}

Mat2 VolterraSolution::S_volterra(double x) const {
  Mat2 C = model_->C_hat_stable(x * lambda_);
  if (x == 0.0) return C;
  auto [p, s] = grid_->locate(x);
  Mat2 I = forward_at(*grid_, integrand_, sweep_, 0.0, p, s);
  Cplx pw = std::pow(x, 2.0 * mu_);
  Vec2 in1{I.a11, pw * I.a21}, in2{I.a12 / pw, I.a22};
  // x^{-2mu} int_0^x t^{2mu} loses all relative accuracy at the tiny graded nodes
  if (p == 0) in2.x = near_zero(x, raw_);
  return Mat2::from_columns(C.col(1) + C * in1, C.col(2) + C * in2);
}

Mat2 VolterraSolution::S(double x) const {
  if (x > x_v_ && x <= x_max_ * (1 + 1e-12)) return S_continued(std::min(x, x_max_));
  Mat2 s = S_hat(x);
  Cplx h1 = std::pow(x, -mu_), h2 = std::pow(x, mu_);
  return {s.a11 * h1, s.a12 * h2, s.a21 * h1, s.a22 * h2};
}

VolterraSolution solve_volterra_S(double x_max, Cplx lambda, const Potential& q,
                                  const ModelSystem& model, const PerturbedConfig& cfg) {
  return VolterraSolution(x_max, lambda, q, model, cfg);
}

}  // namespace dirac
