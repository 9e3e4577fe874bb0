#include <gtest/gtest.h>

#include <random>

#include "dirac/oracle.hpp"
#include "dirac/perturbed.hpp"
#include "dirac/stokes.hpp"

using namespace dirac;

namespace {

const ModelSystem& model(double mu) {
  static const ModelSystem m3{Mu(0.3)}, m7{Mu(0.7)};
  return mu == 0.3 ? m3 : m7;
}

Potential constant(Cplx a1, Cplx a2) {
  auto c1 = [a1](double) { return a1; };
  auto c2 = [a2](double) { return a2; };
  auto z = [](double) { return Cplx(0.0); };
  return Potential("constant", c1, c2, z, z);
}

Potential exp_potential() {
  auto f = [](double t) { return Cplx(std::exp(-t)); };
  auto df = [](double t) { return Cplx(-std::exp(-t)); };
  return Potential("exp", f, f, df, df, 0.0, 40.0);
}

Potential trig() {
  return Potential(
      "sin_cos", [](double t) { return Cplx(std::sin(t)); },
      [](double t) { return Cplx(std::cos(t) * std::exp(-t)); },
      [](double t) { return Cplx(std::cos(t)); },
      [](double t) { return Cplx(-(std::sin(t) + std::cos(t)) * std::exp(-t)); });
}

double step(double x, Cplx l) { return std::min(0.001 / std::abs(l), x / 400.0); }

}  // namespace

TEST(LambdaCut, Crossover) {
  LambdaCut c(Cplx(0, 10), Mu(0.3));
  EXPECT_NEAR(c.a(), 0.06, 1e-15);
  EXPECT_TRUE(c.inner(0.05));
  EXPECT_FALSE(c.inner(0.06));
  // inside (x lambda)^{-mu}, outside e^{R_j lambda x}
  EXPECT_LE(std::abs(c.F(1, 0.03) - BranchPoint::from(Cplx(0, 0.3)).power(-0.3)), 1e-15);
  EXPECT_LE(std::abs(c.F(1, 0.5) - std::exp(kI * Cplx(0, 10) * 0.5)), 1e-15);
}

TEST(LKernel, ZeroPotential) {
  auto z = Potential::zero();
  for (double t : {0.1, 1.0, 3.0}) EXPECT_EQ(max_abs(L_kernel(t, Cplx(0, 10), z, Mu(0.3))), 0.0);
}

TEST(LKernel, DualForms) {
  auto q = Potential::decay_pow(Cplx(1.0, 0.2), Cplx(-0.5, 0.1), 0.7);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Cplx l = std::polar(2.0 + 50 * U(rng), kPi * U(rng));
    double t = 0.6 / std::abs(l) + 5 * U(rng);
    auto f = L_kernel_forms(t, l, q, Mu(0.3));
    ASSERT_LE(max_abs(f.direct - f.closed), 1e-11 * std::max(1.0, max_abs(f.closed)));
  }
}

TEST(LKernel, Bound) {
  // |L| <= 2/|l| |Q'| + C (1/|l| + t^-nu/|l|^nu) |Q| for t >= 2a with C bounded on the ladder
  const Mu mu(0.3);
  auto q = exp_potential();
  double worst = 0;
  for (double m : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    Cplx l(0, m);
    double a = 0.6 / m;
    for (double t = 2 * a; t < 10; t *= 1.3) {
      double lhs = max_abs(L_kernel(t, l, q, mu));
      double lead = 2.0 / m * max_abs(q.dQ(t));
      double w = (1.0 / m + std::pow(t, -0.6) / std::pow(m, 0.6)) * max_abs(q.Q(t));
      worst = std::max(worst, (lhs - lead) / w);
    }
  }
  EXPECT_LT(worst, 5.0);
}

TEST(LKernel, Anticommutator) {
  const Mu mu(0.3);
  auto q = exp_potential();
  const double t = 1.0;
  const Cplx l(0, 10);
  Mat2 Qt = (0.3 / t) * mat::J - l * mat::I, Q = q.Q(t);
  Mat2 lhs = Qt * mat::B * Q + Q * mat::B * Qt;
  Mat2 rhs = (-2.0 * q.q2(t) * 0.3 / t) * mat::B;
  EXPECT_LE(max_abs(lhs - rhs), 1e-13);
  Mat2 qbq = Q * mat::B * Q + (q.q1(t) * q.q1(t) + q.q2(t) * q.q2(t)) * mat::B;
  EXPECT_LE(max_abs(qbq), 1e-13);
}

TEST(NKernel, Cases) {
  const Mu mu(0.3);
  const Cplx l(0, 10);
  const double a = 0.06;
  // t <= x < a
  Mat2 n = N_kernel(0.05, 0.02, l, mu);
  Mat2 exact = BranchPoint::from(0.02 * l).power(-0.6) * mat::B;
  EXPECT_LE(max_abs(n - exact), 1e-13 * max_abs(exact));
  // a <= t <= x
  for (double x : {0.1, 0.5, 2.0}) {
    double t = a + 0.5 * (x - a);
    Mat2 c = N_kernel(x, t, l, mu);
    Mat2 expect = std::exp(2.0 * kI * l * (x - t)) * mat::B1 + mat::B2;
    EXPECT_LE(max_abs(c - expect), 1e-14);
    EXPECT_LE(std::abs(c.a12), 1.0);
  }
  EXPECT_LE(max_abs(N_kernel(0.3, 0.3, l, mu) - mat::B), 1e-15);
}

TEST(Regularity, Certificate) {
  const Mu mu(0.3);
  auto z = regularity_certificate(1.0, Cplx(0, 10), Potential::zero(), mu);
  EXPECT_EQ(z.det_direct, Cplx(1.0));
  EXPECT_EQ(z.distance, 0.0);
  auto q = constant(0.3, 0.1);
  auto c = regularity_certificate(1.0, Cplx(0, 10), q, mu);
  EXPECT_LE(std::abs(c.det_direct - c.det_closed), 1e-11);
  for (double m : {5.0, 10.0, 20.0, 40.0}) {
    auto r = regularity_certificate(1.0, Cplx(0, m), q, mu);
    EXPECT_LE(r.distance, r.bound);
    double C = 0.3;
    EXPECT_NEAR(r.bound, (2 * C * m + 2 * C * C) / (2 * m * m), 1e-15);
  }
}

TEST(Volterra, ZeroPotential) {
  const auto& M = model(0.3);
  VolterraSolution S(2.0, Cplx(1.0, 2.0), Potential::zero(), M);
  for (double x : {1e-5, 0.1, 1.0, 2.0}) {
    EXPECT_LE(max_abs(S.S_hat(x) - M.C_hat(x * Cplx(1.0, 2.0))), 1e-10);
    Mat2 c = eval_model_lambda(x, Cplx(1.0, 2.0), ModelFamily::C, M);
    EXPECT_LE(max_abs(S.S(x) - c), 1e-10 * max_abs(c));
  }
}

TEST(Volterra, GrowthBound) {
  // |S^_1 - C^_1| <= C x^{2 Re mu} int_0^x t^{-2 Re mu}|Q| = C x / 0.4 for Q = K + J
  const auto& M = model(0.3);
  auto q = constant(1.0, 1.0);
  VolterraSolution S(1.0, 1.0, q, M);
  std::vector<double> ratio;
  for (double x : {0.1, 0.5, 1.0}) {
    double d = norm_inf(S.S_hat(x).col(1) - M.C_hat(x).col(1));
    ratio.push_back(d / (x / 0.4));
  }
  for (double r : ratio) EXPECT_LT(r, 5.0);
}

TEST(Volterra, Residual) {
  const auto& M = model(0.3);
  auto q = trig();
  VolterraSolution S(1.0, 2.0, q, M);
  auto Y = [&](Cplx s) { return S.S(s.real()); };
  double r = residual(Y, 0.5, OdeSystem::full(M.mu(), 2.0, q), step(0.5, 2.0));
  EXPECT_LE(r, 1e-7 * std::max(1.0, norm_inf(Y(0.5))));
}

TEST(Volterra, LargeXLambda) {
  // oscillatory and growing directions, Volterra part plus continuation
  const auto& M = model(0.3);
  auto q = Potential::decay_pow(1.0, 1.0, 0.7);
  for (Cplx l : {Cplx(32.0, 0.0), std::polar(32.0, 0.3), Cplx(0.0, 40.0)}) {
    VolterraSolution S(1.0, l, q, M);
    auto sys = OdeSystem::full(M.mu(), l, q);
    auto Y = [&](Cplx s) { return S.S(s.real()); };
    for (double x : {0.2, 0.6, 0.99})
      EXPECT_LE(residual(Y, x, sys, 1e-4 / std::abs(l)), 1e-8 * max_abs(Y(x))) << l << " x=" << x;
  }
  VolterraSolution g(1.0, Cplx(0, 40), q, M);
  EXPECT_NEAR(g.x_volterra(), 3.0 / 40.0, 1e-15);
  EXPECT_EQ(VolterraSolution(1.0, Cplx(0, 40), Potential::zero(), M).x_volterra(), 1.0);
}

TEST(Volterra, Causality) {
  const auto& M = model(0.7);
  auto q = Potential::decay_pow(1.0, 1.0, 0.7);
  VolterraSolution a(1.0, Cplx(2.0, 1.0), q, M), b(3.0, Cplx(2.0, 1.0), q, M);
  for (double x : {0.01, 0.3, 0.9}) EXPECT_LE(max_abs(a.S(x) - b.S(x)), 1e-10 * max_abs(a.S(x)));
}

TEST(Volterra, EntireInLambda) {
  // S^(x, lambda) is entire in lambda: Cauchy mean value over a circle returns the centre
  const auto& M = model(0.3);
  auto q = Potential::gauss(1.0, 0.5);
  const Cplx c(1.0, 0.5);
  const int n = 24;
  Mat2 mean{};
  for (int k = 0; k < n; ++k) {
    Cplx l = c + 0.5 * std::exp(2.0 * kPi * kI * double(k) / double(n));
    mean += (1.0 / n) * VolterraSolution(0.8, l, q, M).S_hat(0.8);
  }
  EXPECT_LE(max_abs(mean - VolterraSolution(0.8, c, q, M).S_hat(0.8)), 1e-10);
}

TEST(Volterra, DomainChecks) {
  const auto& M = model(0.3);
  EXPECT_THROW(VolterraSolution(0.0, 1.0, Potential::zero(), M), Error);
  VolterraSolution S(1.0, 1.0, Potential::zero(), M);
  EXPECT_THROW(S.S(1.5), Error);
}

TEST(Birkhoff, ZeroPotential) {
  const auto& M = model(0.3);
  BirkhoffSolution B(Cplx(0, 20), Potential::zero(), M);
  for (double x : B.nodes()) ASSERT_LE(max_abs(B.U(x) - B.U0(x)), 1e-10);
  // U0 columns are e(x, lambda) F^{-1}(x lambda)
  for (double x : {0.01, 0.5}) {
    Mat2 e = eval_model_lambda(x, Cplx(0, 20), ModelFamily::e, M);
    EXPECT_LE(max_abs(B.U0(x) * B.cut().F_matrix(x) - e), 1e-9 * max_abs(e));
  }
}

TEST(Birkhoff, DomainViolation) {
  try {
    BirkhoffSolution B(5.0, Potential::zero(), model(0.3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
  }
  EXPECT_THROW(BirkhoffSolution(Cplx(-1.0, 5.0), Potential::zero(), model(0.3)), Error);
}

TEST(Birkhoff, ResidualAndContinuity) {
  const auto& M = model(0.3);
  auto q = Potential::decay_pow(1.0, 1.0, 0.7);
  const Cplx l = std::polar(25.0, 1.0);
  BirkhoffSolution B(l, q, M);
  auto sys = OdeSystem::full(M.mu(), l, q);
  auto E = [&](Cplx s) { return B.E(s.real()); };
  const double a = B.cut().a();
  for (double x : {0.2 * a, 0.75 * a, 1.3 * a, 0.4, 1.5}) {
    EXPECT_LE(residual(E, x, sys, step(x, l)), 1e-7 * norm_inf(E(x))) << "x=" << x;
  }
  EXPECT_LE(max_abs(B.E(a * (1 - 1e-9)) - B.E(a * (1 + 1e-9))), 1e-7 * max_abs(B.E(a)));
}

TEST(Birkhoff, DeviationDecay) {
  const auto& M = model(0.3);
  auto q = Potential::decay_pow(1.0, 1.0, 0.7);
  std::vector<double> mods, dev;
  for (double m : {20.0, 40.0, 80.0}) {
    BirkhoffSolution B(Cplx(0, m), q, M);
    double d = 0;
    for (double x : B.nodes()) d = std::max(d, max_abs(B.U(x) - B.U0(x)));
    mods.push_back(m);
    dev.push_back(d);
  }
  EXPECT_LE(fit_decay_exponent(mods, dev), -0.6 + 0.1);
}

TEST(Birkhoff, BoundedBasis) {
  const auto& M = model(0.3);
  for (Cplx l : {Cplx(0, 5), std::polar(5.0, 0.05), std::polar(50.0, 0.8)}) {
    BirkhoffSolution B(l, Potential::zero(), M);
    for (double x = 1e-8; x < 100; x *= 1.7) EXPECT_LT(max_abs(B.U0(x)), 5.0);
  }
}

TEST(SingularGrade, Clamped) {
  // 8 / (1 + p - 2 Re mu) clamped to [1, 40]
  EXPECT_DOUBLE_EQ(singular_grade(Mu(0.3), Potential::zero()), 20.0);
  EXPECT_DOUBLE_EQ(singular_grade(Mu(0.3), Potential::decay_pow(1.0, 1.0, 5.0)), 8.0 / 5.4);
  EXPECT_DOUBLE_EQ(singular_grade(Mu(0.7), Potential::decay_pow(1.0, 1.0, 0.3)), 40.0);
}
