#include <gtest/gtest.h>

#include "dirac/oracle.hpp"
#include "dirac/perturbed.hpp"

using namespace dirac;

namespace {

const ModelSystem& model03() {
  static const ModelSystem m{Mu(0.3)};
  return m;
}

}  // namespace

TEST(Integrate, SeriesPropagation) {
  const auto& M = model03();
  Mat2 Y0 = M.C(BranchPoint(0.1, 0.0));
  auto r = integrate(OdeSystem::model(M.mu()), ContourSpec{{0.1, 5.0}}, Y0);
  Mat2 direct = M.C(BranchPoint(5.0, 0.0));
  EXPECT_LE(max_abs(r.Y - direct), 1e-8 * max_abs(direct));
  EXPECT_GT(r.steps, 0);
}

TEST(Integrate, DeterminantOnQuarterCircle) {
  const auto& M = model03();
  std::vector<Cplx> pts;
  for (int k = 0; k <= 12; ++k) pts.push_back(std::polar(1.5, kPi / 2 * k / 12.0));
  Mat2 Y0 = M.C(BranchPoint(1.5, 0.0));
  auto r = integrate(OdeSystem::model(M.mu()), ContourSpec{pts}, Y0);
  EXPECT_LE(std::abs(r.Y.det() - Y0.det()), 1e-8);
  EXPECT_LE(max_abs(r.Y - M.C(BranchPoint(1.5, kPi / 2))), 1e-8);
}

TEST(Integrate, FullSystemAgainstVolterra) {
  const auto& M = model03();
  auto q = Potential::gauss(Cplx(1.0, 0.3), 0.5);
  const Cplx l(2.0, 1.0);
  VolterraSolution S(2.0, l, q, M);
  auto r = integrate(OdeSystem::full(M.mu(), l, q), ContourSpec{{0.3, 2.0}}, S.S(0.3));
  EXPECT_LE(max_abs(r.Y - S.S(2.0)), 1e-9 * max_abs(S.S(2.0)));
}

TEST(Integrate, Errors) {
  const auto& M = model03();
  auto sys = OdeSystem::model(M.mu());
  EXPECT_THROW(integrate(sys, ContourSpec{{1.0}}, mat::I), Error);
  try {
    integrate(sys, ContourSpec{{-1.0, 1.0}}, mat::I);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
  }
  IntegratorConfig tiny;
  tiny.max_steps = 3;
  try {
    integrate(sys, ContourSpec{{0.1, 30.0}}, mat::I, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StepLimitExceeded);
  }
  auto q = Potential::zero();
  EXPECT_THROW(integrate(OdeSystem::full(M.mu(), 1.0, q), ContourSpec{{Cplx(1, 1), 2.0}}, mat::I), Error);
}

TEST(Residual, FreeSolution) {
  auto Y = [](Cplx x) { return eval_e0(x); };
  EXPECT_LE(residual(Y, 1.0, OdeSystem::model(Mu::unchecked(0.0)), 1e-3), 1e-10);
}

TEST(Residual, SeriesSolution) {
  const auto& M = model03();
  auto Y = [&](Cplx x) { return M.C(BranchPoint::from(x)); };
  EXPECT_LE(residual(Y, 0.5, OdeSystem::model(M.mu()), 1e-3), 1e-8);
}

TEST(Residual, DetectsNonSolution) {
  const auto& M = model03();
  Mat2 c{1.0, 2.0, -0.5, 3.0};
  auto Y = [&](Cplx) { return c; };
  EXPECT_GT(residual(Y, 1.0, OdeSystem::model(M.mu()), 1e-3), 0.1);
}

TEST(Residual, StencilDomain) {
  const auto& M = model03();
  auto Y = [&](Cplx x) { return M.C(BranchPoint::from(x)); };
  try {
    residual(Y, 0.001, OdeSystem::model(M.mu()), 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StencilOutOfDomain);
  }
}

TEST(Residual, FourthOrderStencil) {
  // truncation falls ~16x per halving of h until round-off
  const auto& M = model03();
  auto Y = [&](Cplx x) { return M.C(BranchPoint::from(x)); };
  auto sys = OdeSystem::model(M.mu());
  double r1 = residual(Y, 0.3, sys, 0.04), r2 = residual(Y, 0.3, sys, 0.02);
  EXPECT_GT(r1 / r2, 10.0);
  EXPECT_LT(r1 / r2, 24.0);
}
