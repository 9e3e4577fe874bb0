#include <algorithm>
#include <cmath>

#include "dirac/fault.hpp"
#include "dirac/perturbed.hpp"

namespace dirac {

LambdaCut::LambdaCut(Cplx lambda, const Mu& mu) : lambda_(lambda), mu_(mu.value()) {
  if (lambda == 0.0) throw Error(ErrorCode::DomainViolation, "lambda must be nonzero");
  a_ = 2.0 * std::abs(mu_) / std::abs(lambda_);
}

bool LambdaCut::inner(double x) const {
  double r = std::abs(x * lambda_);
  double brk = (fault::on(fault::Kind::F_breakpoint) ? 1.0 : 2.0) * std::abs(mu_);
  return r < brk;
}

Cplx LambdaCut::F(int j, double x) const {
  if (inner(x)) return BranchPoint::from(x * lambda_).power(-mu_);
  return std::exp(jost_R(j) * lambda_ * x);
}

Mat2 resolvent_inverse(double t, Cplx lambda, const Mu& mu) {
  const Cplx m = mu.value() / t;
  const Cplx d = m * m - lambda * lambda;
  if (std::abs(d) < 1e-10 * std::max(std::norm(lambda), std::norm(m)))
    throw Error(ErrorCode::NearSingularResolvent, "mu^2/t^2 - lambda^2 is nearly zero");
  return (m * mat::J + lambda * mat::I) * (1.0 / d);
}

LForms L_kernel_forms(double t, Cplx lambda, const Potential& q, const Mu& mu) {
  const Cplx m = mu.value();
  const Mat2 Qt = (m / t) * mat::J - lambda * mat::I;
  const Mat2 Qi = resolvent_inverse(t, lambda, mu);
  const Mat2 Q = q.Q(t), dQ = q.dQ(t);
  const Cplx q1 = q.q1(t), q2 = q.q2(t);
  const Mat2& B = mat::B;

  LForms f;
  Mat2 dQi = Qi * ((m / (t * t)) * mat::J) * Qi;
  Mat2 quad = Q * B * Q + Q * B * Qt + Qt * B * Q;
  if (fault::on(fault::Kind::L_sign)) quad = -quad;
  f.direct = dQi * Q + Qi * dQ + Qi * quad;
  f.closed = Qi * (dQ - (q1 * q1 + q2 * q2) * B) +
             Qi * ((Qi * ((1.0 / t) * mat::J) * Q - 2.0 * q2 * B) * (m / t));
  return f;
}

Mat2 L_kernel(double t, Cplx lambda, const Potential& q, const Mu& mu) {
  return L_kernel_forms(t, lambda, q, mu).direct;
}

Mat2 N_kernel(double x, double t, Cplx lambda, const Mu& mu) {
  LambdaCut cut(lambda, mu);
  Cplx f2t = cut.F(2, t);
  return (f2t * f2t * cut.F(1, x) / cut.F(2, x)) * mat::B1 + (cut.F(1, t) * f2t) * mat::B2;
}

double singular_grade(const Mu& mu, const Potential& q) {
  double beta = q.small_t_exponent() - 2.0 * mu.value().real();
  return std::clamp(8.0 / std::max(1.0 + beta, 0.2), 1.0, 40.0);
}

RegularityCertificate regularity_certificate(double x, Cplx lambda, const Potential& q,
                                             const Mu& mu) {
  const Cplx m = mu.value();
  const Cplx q1 = q.q1(x), q2 = q.q2(x);
  const Cplx d = m * m / (x * x) - lambda * lambda;
  RegularityCertificate c;
  c.det_direct = (mat::I - 0.5 * (mat::B * resolvent_inverse(x, lambda, mu) * q.Q(x) * mat::B)).det();
  c.det_closed = 1.0 + (4.0 * q2 * m / x + q1 * q1 + q2 * q2) / (4.0 * d);
  c.distance = std::abs(c.det_direct - 1.0);
  double C = std::max(std::abs(q1), std::abs(q2));
  double L = std::abs(lambda);
  c.bound = (2.0 * C * L + 2.0 * C * C) / (2.0 * L * L);
  return c;
}

}  // namespace dirac
