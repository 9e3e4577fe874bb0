#include <gtest/gtest.h>

#include "dirac/model.hpp"
#include "dirac/oracle.hpp"

using namespace dirac;

namespace {

const ModelSystem& model03() {
  static const ModelSystem m{Mu(0.3)};
  return m;
}

}  // namespace

TEST(Mu, Invariant) {
  EXPECT_THROW(Mu(-0.3), Error);
  EXPECT_THROW(Mu(0.0), Error);
  EXPECT_NO_THROW(Mu(Cplx(0.3, 2.0)));
  EXPECT_DOUBLE_EQ(Mu(0.3).nu(), 0.6);
  EXPECT_DOUBLE_EQ(Mu(0.7).nu(), 1.0);
  EXPECT_EQ(Mu(0.3).mu_j(1), Cplx(-0.3));
}

TEST(Series, Coefficients) {
  auto s = compute_series(Mu(0.3), Normalization{}, 40);
  EXPECT_EQ(s.coeff(1, 0), Cplx(1.0));
  EXPECT_EQ(s.coeff(2, 0), Cplx(1.0));
  // 1/(2 mu_1 + 1), -1/(2 (2 mu_2 + 1))
  EXPECT_NEAR(std::abs(s.coeff(1, 1) - 2.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.coeff(2, 2) + 0.3125), 0.0, 1e-15);
  auto s2 = compute_series(Mu(0.3), Normalization(Cplx(2.0, 1.0)), 10);
  EXPECT_EQ(s2.coeff(1, 0), Cplx(2.0, 1.0));
  EXPECT_LE(std::abs(s2.coeff(2, 0) - 1.0 / Cplx(2.0, 1.0)), 1e-16);
}

TEST(Series, DegenerateRecurrence) {
  try {
    compute_series(Mu(0.5), Normalization{}, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateRecurrence);
  }
}

TEST(Series, Determinant) {
  auto s = compute_series(Mu(0.3), Normalization{}, 40);
  EXPECT_LE(std::abs(eval_C(BranchPoint(0.5, 0.0), s).det() - 1.0), 1e-12);
  for (Cplx mu : {Cplx(0.2), Cplx(0.45), Cplx(0.3, 0.1)}) {
    auto t = compute_series(Mu(mu), Normalization{}, 60);
    for (double phi : {-3.0, -1.0, 0.0, 2.0, kPi})
      for (double r : {0.01, 0.5, 3.0}) EXPECT_LE(std::abs(eval_C(BranchPoint(r, phi), t).det() - 1.0), 1e-10);
  }
}

TEST(Series, UnitArgumentAndResidual) {
  auto s = compute_series(Mu(0.3), Normalization{}, 40);
  EXPECT_LE(max_abs(eval_C(BranchPoint(1.0, 0.0), s) - s.hat(1.0)), 1e-15);
  auto Y = [&](Cplx x) { return eval_C(BranchPoint::from(x), s); };
  EXPECT_LE(residual(Y, 0.7, OdeSystem::model(Mu(0.3)), 1e-3), 1e-8);
}

TEST(Series, TruncationInsufficient) {
  auto s = compute_series(Mu(0.3), Normalization{}, 3);
  try {
    s.hat(30.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationInsufficient);
  }
}

TEST(FreeSolution, Examples) {
  EXPECT_EQ(eval_e0(0.0), (Mat2{kI, -kI, 1.0, 1.0}));
  EXPECT_LE(std::abs(eval_e0(Cplx(1.0, 2.0)).det() - 2.0 * kI), 1e-14);
  const Cplx x(0.4, -1.3);
  Vec2 c1 = eval_e0(x).col(1), expect = std::exp(kI * x) * Vec2{kI, 1.0};
  EXPECT_LE(norm_inf(c1 - expect), 1e-15);
}

TEST(Jost, KernelAtCoincidentArguments) {
  EXPECT_LE(max_abs(g_kernel(1, 0.0, 0.0) - mat::I), 1e-15);
  EXPECT_LE(max_abs(g_kernel(2, 0.0, 0.0) - mat::I), 1e-15);
}

TEST(Jost, LimitAlongImaginaryAxis) {
  JostSolution J(Mu(0.3));
  double prev = 0;
  for (double r : {10.0, 20.0, 40.0}) {
    double d = norm_inf(J.z(1, BranchPoint(r, kPi / 2)) - jost_z0(1));
    double C = d * r;
    EXPECT_LT(C, 1.0);
    if (prev > 0) EXPECT_NEAR(C / prev, 1.0, 0.15);
    prev = C;
  }
}

TEST(Jost, ZeroSingularityIsFree) {
  auto v = jost_radial(1, BranchPoint(5.0, 1.0), Mu::unchecked(0.0));
  EXPECT_LE(norm_inf(v.z - jost_z0(1)), 1e-15);
  EXPECT_LE(v.iterations, 2);
}

TEST(Jost, ResidualOfE1) {
  const Mu mu(0.3);
  JostSolution J(mu);
  auto y = [&](Cplx x) { return J.e(1, BranchPoint::from(x)); };
  EXPECT_LE(residual(y, Cplx(0, 8), OdeSystem::model(mu), 1e-3, kI), 1e-8);
}

TEST(Jost, HorizontalAgreesWithRadial) {
  const Mu mu(0.3);
  BranchPoint x(20.0, kPi / 4);
  auto h = jost_horizontal(1, x, mu, kPi / 4);
  auto r = jost_radial(1, x, mu);
  EXPECT_LE(norm_inf(h.z - r.z), 1e-7);
  auto h2 = jost_horizontal(2, BranchPoint(20.0, -kPi / 4), mu, kPi / 4);
  auto r2 = jost_radial(2, BranchPoint(20.0, -kPi / 4), mu);
  EXPECT_LE(norm_inf(h2.z - r2.z), 1e-7);
}

TEST(Jost, AsymptoticTailMatchesPicard) {
  const Mu mu(0.3);
  double err = 0;
  Vec2 a = jost_asymptotic(1, Cplx(0, 30), mu, &err);
  Vec2 p = jost_radial(1, BranchPoint(30.0, kPi / 2), mu).z;
  EXPECT_LE(norm_inf(a - p), 1e-10);
  EXPECT_LT(err, 1e-12);
}

TEST(Jost, DecayRate) {
  const Mu mu(0.3);
  JostSolution J(mu);
  const double x0 = J.x0();
  std::vector<double> d;
  for (double s : {1.0, 2.0, 4.0}) d.push_back(norm_inf(J.z(1, BranchPoint(s * x0, 0.0)) - jost_z0(1)));
  EXPECT_NEAR(d[0] / d[1], 2.0, 0.2);
  EXPECT_NEAR(d[1] / d[2], 2.0, 0.1);
}

TEST(Jost, SectorEnforced) {
  JostSolution J(Mu(0.3));
  EXPECT_THROW(J.z(2, BranchPoint(10.0, 3.0)), Error);
  EXPECT_THROW(jost_horizontal(1, BranchPoint(10.0, 3.0), Mu(0.3), kPi / 4), Error);
}

TEST(Lemma1, Examples) {
  auto d = check_lemma1(BranchPoint(0.5, kPi / 2), model03());
  EXPECT_LE(d.series, 1e-10);
  auto e = check_lemma1(BranchPoint(15.0, kPi / 2), model03());
  EXPECT_LE(e.jost, 1e-7);
  EXPECT_THROW(check_lemma1(BranchPoint(1.0, -0.5), model03()), Error);
}

TEST(Lemma1, EntireParts) {
  // K C^_j(-x) = (-1)^j C^_j(x)
  const auto& s = model03().series();
  for (Cplx x : {Cplx(0.5, 0.5), Cplx(-1.0, 2.0), Cplx(2.0, 0.0)}) {
    Mat2 a = mat::K * s.hat(-x), b = s.hat(x);
    EXPECT_LE(norm_inf(a.col(1) + b.col(1)), 1e-13);
    EXPECT_LE(norm_inf(a.col(2) - b.col(2)), 1e-13);
  }
}

TEST(Gamma0, TheoremRelations) {
  const auto& M = model03();
  const Mat2& g = M.gamma0().m;
  EXPECT_EQ(M.gamma0().role, StokesRole::gamma0);
  EXPECT_LE(std::abs(g.det() - 2.0 * kI), 1e-7);
  // 1/(i cos 0.3 pi)
  EXPECT_LE(std::abs(g.a11 * g.a21 - Cplx(0, -1.701302)), 1e-6);
  EXPECT_LE(std::abs(g.a11 - std::exp(0.3 * kI * kPi) * g.a12), 1e-7);
  EXPECT_LE(std::abs(g.a21 + std::exp(-0.3 * kI * kPi) * g.a22), 1e-7);
}

TEST(Gamma0, MatchingPointIndependence) {
  ModelConfig c1, c2;
  c1.matching_point = 5.0;
  c2.matching_point = 8.0;
  Mat2 a = compute_gamma0(Mu(0.3), Normalization{}, c1).m;
  Mat2 b = compute_gamma0(Mu(0.3), Normalization{}, c2).m;
  EXPECT_LE(max_abs(a - b), 1e-7);
}

TEST(Beta0, CorollaryRelations) {
  const auto& M = model03();
  const Mat2& b = M.beta0().m;
  EXPECT_EQ(M.beta0().role, StokesRole::beta0);
  EXPECT_LE(std::abs(b.det() - 1.0 / (2.0 * kI)), 1e-7);
  EXPECT_LE(max_abs(b * M.gamma0().m - mat::I), 1e-12);
  // 1/(4i cos 0.3 pi)
  EXPECT_LE(std::abs(b.a21 * b.a22 - Cplx(0, -0.42532540417602)), 1e-7);
}

TEST(ModelLambda, UnitLambda) {
  const auto& M = model03();
  for (double x : {0.3, 1.0, 2.5}) {
    EXPECT_LE(max_abs(eval_model_lambda(x, 1.0, ModelFamily::C, M) - M.C(BranchPoint(x, 0.0))), 1e-15);
    EXPECT_LE(max_abs(eval_model_lambda(x, 1.0, ModelFamily::e, M) - M.e(BranchPoint(x, 0.0))), 1e-15);
  }
}

TEST(ModelLambda, ScalingTheorem) {
  const auto& M = model03();
  const Cplx l = std::polar(4.0, kPi / 4);
  const double x = M.matching_point() / std::abs(l);
  Mat2 g = mat2_inverse(eval_model_lambda(x, l, ModelFamily::C, M)) *
           eval_model_lambda(x, l, ModelFamily::e, M);
  BranchPoint L = BranchPoint::from(l);
  const Mat2& g0 = M.gamma0().m;
  Cplx s1 = L.power(-0.3), s2 = L.power(0.3);
  EXPECT_LE(std::abs(g.a11 - s1 * g0.a11), 1e-7);
  EXPECT_LE(std::abs(g.a12 - s1 * g0.a12), 1e-7);
  EXPECT_LE(std::abs(g.a21 - s2 * g0.a21), 1e-7);
  EXPECT_LE(std::abs(g.a22 - s2 * g0.a22), 1e-7);
}

TEST(ModelLambda, ScaledResidual) {
  const auto& M = model03();
  const Cplx l(0, 5);
  auto Y = [&](Cplx s) { return eval_model_lambda(s.real(), l, ModelFamily::e, M); };
  double r = residual(Y, 2.0, OdeSystem::scaled(M.mu(), l), 2e-4);
  EXPECT_LE(r / norm_inf(Y(2.0)), 1e-7);
}

TEST(ModelLambda, DeterminantsOffAxis) {
  const auto& M = model03();
  for (Cplx l : {Cplx(2.0, -1.0), Cplx(-1.0, 0.5), Cplx(0.0, 3.0)})
    for (double x : {0.1, 1.0, 4.0}) {
      // det loses ~|C|^2 eps to cancellation where C grows like e^{|x lambda|}
      Mat2 c = eval_model_lambda(x, l, ModelFamily::C, M);
      EXPECT_LE(std::abs(c.det() - 1.0), 1e-9 * std::max(1.0, 1e-3 * max_abs(c) * max_abs(c)));
      EXPECT_LE(std::abs(eval_model_lambda(x, l, ModelFamily::e, M).det() - 2.0 * kI), 1e-7);
    }
}
