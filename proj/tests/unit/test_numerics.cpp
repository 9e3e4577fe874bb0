#include <gtest/gtest.h>

#include <random>

#include "dirac/model.hpp"
#include "dirac/picard.hpp"
#include "dirac/quadrature.hpp"

using namespace dirac;

namespace {

void expect_near(Cplx a, Cplx b, double tol) { EXPECT_LE(std::abs(a - b), tol) << a << " vs " << b; }

}  // namespace

TEST(BranchPower, Examples) {
  expect_near(branch_power(BranchPoint(1.0, 0.0), Cplx(0.7, -2.0)), 1.0, 1e-15);
  // exp(0.3 i pi)
  expect_near(branch_power(BranchPoint(1.0, kPi), 0.3), Cplx(0.587785252292473, 0.809016994374947),
              1e-14);
  expect_near(branch_power(BranchPoint(2.0, 0.0), -1.0), 0.5, 1e-15);
}

TEST(BranchPower, CutConvention) {
  EXPECT_DOUBLE_EQ(BranchPoint::from(Cplx(-2.0, 0.0)).phi(), kPi);
  EXPECT_DOUBLE_EQ(BranchPoint::from(Cplx(-2.0, -0.0)).phi(), kPi);
  EXPECT_THROW(BranchPoint(1.0, -kPi), Error);
  EXPECT_THROW(BranchPoint::from(0.0), Error);
}

TEST(BranchPower, AdditiveInExponent) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    BranchPoint x(std::exp(3.0 * U(rng)), kPi * U(rng));
    Cplx a(2 * U(rng), 2 * U(rng)), b(2 * U(rng), 2 * U(rng));
    Cplx lhs = branch_power(x, a + b), rhs = branch_power(x, a) * branch_power(x, b);
    ASSERT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(rhs));
  }
}

TEST(BranchPower, NegatedStaysOnSheet) {
  BranchPoint x(2.0, 0.5);
  BranchPoint m = x.negated();
  EXPECT_NEAR(m.r(), 2.0, 1e-15);
  EXPECT_NEAR(m.phi(), 0.5 - kPi, 1e-15);
  EXPECT_NEAR(BranchPoint(1.0, -0.5).negated().phi(), kPi - 0.5, 1e-15);
}

TEST(Mat2Inverse, Examples) {
  EXPECT_EQ(max_abs(mat2_inverse(mat::I) - mat::I), 0.0);
  EXPECT_LE(max_abs(mat2_inverse(mat::B) + mat::B), 1e-16);
  Mat2 inv = mat2_inverse(eval_e0(0.0));
  Mat2 expect = (1.0 / (2.0 * kI)) * Mat2{1.0, kI, -1.0, kI};
  EXPECT_LE(max_abs(inv - expect), 1e-15);
}

TEST(Mat2Inverse, Property) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  int tested = 0;
  for (int i = 0; i < 2000; ++i) {
    Mat2 m{{U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)}};
    if (std::abs(m.det()) < 1e-8) continue;
    Mat2 inv = mat2_inverse(m);
    ASSERT_LE(norm_inf(m * inv - mat::I), 1e-12 * norm_inf(m) * norm_inf(inv));
    ++tested;
  }
  EXPECT_GT(tested, 1900);
}

TEST(Mat2Inverse, SingularThrows) {
  try {
    mat2_inverse(Mat2{1.0, 2.0, 2.0, 4.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
  // scale relative: tiny but well conditioned is fine
  EXPECT_NO_THROW(mat2_inverse(1e-10 * mat::I));
}

TEST(Mat2, AlgebraTable) {
  using namespace mat;
  EXPECT_EQ(max_abs(K * K - I), 0.0);
  EXPECT_EQ(max_abs(J * J - I), 0.0);
  EXPECT_EQ(max_abs(B * B + I), 0.0);
  EXPECT_EQ(max_abs(K * B + B * K), 0.0);
  EXPECT_EQ(max_abs(J * B + B * J), 0.0);
  EXPECT_EQ(max_abs(I1 * B - B1), 0.0);
  EXPECT_EQ(max_abs(I2 * B - B2), 0.0);
  EXPECT_EQ(max_abs(B1 + B2 - B), 0.0);
}

TEST(Picard, IdentityStep) {
  PicardConfig cfg;
  auto r = picard_solve(Cplx(3.0, 1.0), [](Cplx s) { return s; }, cfg);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_EQ(r.state, Cplx(3.0, 1.0));
}

TEST(Picard, GeometricLimit) {
  PicardConfig cfg;
  cfg.tol = 1e-12;
  auto r = picard_solve(Cplx(0.0), [](Cplx s) { return 0.5 * s + 1.0; }, cfg);
  EXPECT_NEAR(std::abs(r.state - 2.0), 0.0, 1e-11);
  EXPECT_NEAR(r.contraction, 0.5, 1e-6);
}

TEST(Picard, DivergenceGuard) {
  PicardConfig cfg;
  try {
    picard_solve(Cplx(1.0), [](Cplx s) { return 2.0 * s + 1.0; }, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Diverged);
  }
}

TEST(Picard, IterationCap) {
  PicardConfig cfg;
  cfg.max_iter = 5;
  try {
    picard_solve(Cplx(0.0), [](Cplx s) { return 0.9 * s + 1.0; }, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(Quadrature, GaussExactness) {
  for (int n : {4, 8, 16, 24}) {
    const auto& g = GaussLegendre::get(n);
    for (int d = 0; d < 2 * n; ++d) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += g.weights()[k] * std::pow(g.nodes()[k], d);
      double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      ASSERT_NEAR(s, exact, 1e-14) << "n=" << n << " d=" << d;
    }
  }
}

TEST(Quadrature, PartialIntegrationMatrix) {
  const auto& g = GaussLegendre::get(16);
  for (int i = 0; i < 16; ++i) {
    double xi = g.nodes()[i], s = 0, s3 = 0;
    for (int k = 0; k < 16; ++k) {
      s += g.fwd(i, k);
      s3 += g.fwd(i, k) * std::pow(g.nodes()[k], 3);
    }
    EXPECT_NEAR(s, xi + 1.0, 1e-14);
    EXPECT_NEAR(s3, (std::pow(xi, 4) - 1.0) / 4.0, 1e-14);
  }
}

TEST(Quadrature, GradedGridSingularIntegrand) {
  // int_0^1 t^{-0.6} dt = 2.5
  auto g = graded_grid(1.0, 1.0, 1.0, 20.0, 12, 16);
  Cplx s = 0;
  for (std::size_t k = 0; k < g.size(); ++k) s += g.weights()[k] * std::pow(g.nodes()[k].real(), -0.6);
  EXPECT_NEAR(s.real(), 2.5, 1e-10);
}

TEST(Quadrature, SweepOfConstantIsArcLength) {
  QuadratureGrid g(segment_panels(Cplx(0.0, 1.0), Cplx(3.0, 2.0), 0.5), 8);
  std::vector<Cplx> f(g.size(), 1.0);
  auto fw = sweep_forward(g, f);
  auto bw = sweep_backward(g, f);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_LE(std::abs(fw.node[k] - (g.nodes()[k] - g.start())), 1e-13);
    EXPECT_LE(std::abs(bw.node[k] - (g.end() - g.nodes()[k])), 1e-13);
  }
}

TEST(Quadrature, ExponentialSweep) {
  // int_0^x e^{c(x-t)} dt = (e^{cx} - 1)/c with Re c <= 0
  const Cplx c(-1.0, 3.0);
  QuadratureGrid g(segment_panels(0.0, 4.0, 0.25), 16);
  std::vector<Cplx> f(g.size(), 1.0);
  auto fw = sweep_forward(g, f, c);
  for (std::size_t k = 0; k < g.size(); ++k) {
    Cplx x = g.nodes()[k];
    EXPECT_LE(std::abs(fw.node[k] - (std::exp(c * x) - 1.0) / c), 1e-13);
  }
}
