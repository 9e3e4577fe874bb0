#include <gtest/gtest.h>

#include "dirac/stokes.hpp"

using namespace dirac;

namespace {

const ModelSystem& model(double mu) {
  static const ModelSystem m3{Mu(0.3)}, m7{Mu(0.7)};
  return mu == 0.3 ? m3 : m7;
}

Mat2 scale_rows(const Mat2& g, Cplx r1, Cplx r2) {
  return {r1 * g.a11, r1 * g.a12, r2 * g.a21, r2 * g.a22};
}

const std::vector<Cplx> kLadder{Cplx(0, 20), Cplx(0, 40), Cplx(0, 80), Cplx(0, 160)};

}  // namespace

TEST(FitDecay, ExactPowerLaw) {
  std::vector<double> s{1, 2, 4, 8}, v;
  for (double x : s) v.push_back(3.0 * std::pow(x, -0.75));
  EXPECT_NEAR(fit_decay_exponent(s, v), -0.75, 1e-14);
  EXPECT_THROW(fit_decay_exponent({1.0}, {1.0}), Error);
  EXPECT_THROW(fit_decay_exponent({1.0, 2.0}, {1.0, 0.0}), Error);
}

TEST(GammaLambda, ZeroPotential) {
  for (double m : {0.3, 0.7}) {
    const auto& M = model(m);
    const Cplx l(0, 20);
    auto rep = gamma_lambda_report(l, Potential::zero(), M);
    BranchPoint L = BranchPoint::from(l);
    Mat2 expect = scale_rows(M.gamma0().m, L.power(-m), L.power(m));
    EXPECT_LE(max_abs(rep.gamma.m - expect), 1e-8 * max_abs(expect));
    EXPECT_EQ(rep.gamma.role, StokesRole::gamma_lambda);
    ASSERT_TRUE(rep.gamma.lambda.has_value());
  }
}

TEST(GammaLambda, BoundaryValueAtZero) {
  // U_2j(0, lambda) = -c10 gamma0_1j at Q = 0
  const auto& M = model(0.3);
  BirkhoffSolution B(Cplx(0, 30), Potential::zero(), M);
  Mat2 U0 = B.U_at_zero();
  EXPECT_LE(std::abs(U0.a21 + M.gamma0().m.a11), 1e-9);
  EXPECT_LE(std::abs(U0.a22 + M.gamma0().m.a12), 1e-9);
}

TEST(GammaLambda, ColumnTwoExact) {
  const auto& M = model(0.3);
  auto q = Potential::decay_pow(1.0, 1.0, 0.7);
  const Cplx l = std::polar(30.0, 1.2);
  auto rep = gamma_lambda_report(l, q, M);
  BranchPoint L = BranchPoint::from(l);
  const Mat2& g0 = M.gamma0().m;
  EXPECT_LE(std::abs(rep.gamma.m.a12 * L.power(0.3) - g0.a12), 1e-8 * std::abs(g0.a12));
  EXPECT_LE(std::abs(rep.gamma.m.a22 * L.power(-0.3) - g0.a22), 1e-8 * std::abs(g0.a22));
  EXPECT_LE(rep.matching_defect, 1e-6);
  EXPECT_LE(rep.spread, 1e-7);
}

TEST(BetaLambda, InversePairAndRole) {
  const auto& M = model(0.3);
  auto g = compute_gamma_lambda(Cplx(0, 20), Potential::gauss(1.0, -0.5), M);
  auto b = compute_beta_lambda(g);
  EXPECT_LE(max_abs(b.m * g.m - mat::I), 1e-12);
  EXPECT_THROW(compute_beta_lambda(M.gamma0()), Error);
  // Q = 0: beta_kj(lambda) = lambda^{-mu_j} beta0_kj
  auto g0 = compute_gamma_lambda(Cplx(0, 20), Potential::zero(), M);
  Mat2 bz = compute_beta_lambda(g0).m;
  BranchPoint L = BranchPoint::from(Cplx(0, 20));
  const Mat2& b0 = M.beta0().m;
  Mat2 expect{b0.a11 * L.power(0.3), b0.a12 * L.power(-0.3), b0.a21 * L.power(0.3), b0.a22 * L.power(-0.3)};
  EXPECT_LE(max_abs(bz - expect), 1e-8 * max_abs(expect));
}

TEST(GammaLadder, LadderMu03) {
  auto A = verify_theorem6(kLadder, Potential::decay_pow(1.0, 1.0, 0.7), model(0.3));
  EXPECT_NEAR(A.nu, 0.6, 1e-15);
  EXPECT_LE(A.column2_defect, 1e-8);
  EXPECT_LE(A.exponent[0], -0.6 + 0.1);
  EXPECT_LE(A.exponent[1], -0.6 + 0.1);
  // regression value of the fit; scales like -(1 + p) with p = 0.7
  EXPECT_NEAR(A.exponent[0], -1.684, 0.02);
  for (double d : A.matching_defect) EXPECT_LE(d, 1e-6);
}

TEST(GammaLadder, LadderMu07) {
  auto A = verify_theorem6(kLadder, Potential::decay_pow(1.0, 1.0, 0.7), model(0.7));
  EXPECT_LE(A.column2_defect, 1e-8);
  EXPECT_LE(A.exponent[0], -0.9);
  EXPECT_LE(A.exponent[1], -0.9);
}

TEST(GammaLadder, ZeroPotentialDeviationsVanish) {
  auto A = verify_theorem6(kLadder, Potential::zero(), model(0.3));
  for (auto& row : A.deviation)
    for (auto& v : row)
      for (double d : v) EXPECT_LE(d, 1e-8);
  EXPECT_TRUE(std::isnan(A.exponent[0]));
}

TEST(GammaLadder, LadderTooShort) {
  EXPECT_THROW(verify_theorem6({Cplx(0, 20), Cplx(0, 40)}, Potential::zero(), model(0.3)), Error);
}

TEST(LargeXForm, Selectors) {
  for (double phi : {0.05, 0.8, kPi / 2}) {
    auto s = RemarkSelectors::from(2.0, std::polar(1.0, phi));
    EXPECT_EQ(s.m, 0);
    EXPECT_EQ(s.l, -1);
  }
  EXPECT_EQ(RemarkSelectors::from(-1.0, std::polar(1.0, 2.0)).m, 1);
  EXPECT_EQ(RemarkSelectors::from(1.0, std::polar(1.0, -2.0)).m, -1);
  EXPECT_EQ(RemarkSelectors::from(1.0, std::polar(1.0, -2.0)).l, 1);
  EXPECT_EQ(RemarkSelectors::from(1.0, std::polar(1.0, kPi)).l, 1);
  EXPECT_THROW(RemarkSelectors::from(0.0, 1.0), Error);
}

TEST(LargeXForm, ProductConstraint) {
  const Mat2& b = model(0.3).beta0().m;
  // 1/(4i cos 0.3 pi)
  EXPECT_LE(std::abs(b.a21 * b.a22 - 1.0 / (4.0 * kI * std::cos(0.3 * kPi))), 1e-7);
  EXPECT_LE(std::abs(b.a21 * b.a22 - Cplx(0, -0.42532540417602)), 1e-7);
}

TEST(LargeXForm, Consistency) {
  const auto& M = model(0.3);
  const Cplx l(0, 1);
  VolterraSolution S(40.0, l, Potential::zero(), M);
  std::vector<double> s{8, 16, 32}, dev;
  for (double xl : s) {
    auto as = asymptotic_S(xl, l, M.mu(), M.beta0());
    Mat2 v = S.S(xl);
    double d = 0;
    for (int j = 1; j <= 2; ++j) d = std::max(d, norm_inf(v.col(j) - as.value.col(j)) / norm_inf(as.value.col(j)));
    dev.push_back(d);
  }
  EXPECT_LE(fit_decay_exponent(s, dev), -0.6 + 0.1);
  EXPECT_LT(dev.back(), 0.01);
  EXPECT_THROW(asymptotic_S(0.5, l, M.mu(), M.beta0()), Error);
}

TEST(Gamma0Lambda, ScalingAcrossLambdas) {
  const auto& M = model(0.3);
  for (Cplx l : {std::polar(4.0, kPi / 4), Cplx(0, 2), Cplx(0.5, 3), Cplx(5, 0)}) {
    BranchPoint L = BranchPoint::from(l);
    Mat2 g = compute_gamma0_lambda(l, M).m;
    EXPECT_LE(max_abs(scale_rows(g, L.power(0.3), L.power(-0.3)) - M.gamma0().m), 1e-7);
  }
  EXPECT_THROW(compute_gamma0_lambda(0.0, M), Error);
}
