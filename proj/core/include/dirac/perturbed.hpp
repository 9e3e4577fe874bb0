#pragma once

#include <memory>
#include <vector>

#include "dirac/model.hpp"
#include "dirac/oracle.hpp"
#include "dirac/potential.hpp"
#include "dirac/quadrature.hpp"

namespace dirac {

// Crossover a = 2|mu|/|lambda| and the weights F_j(x lambda).
class LambdaCut {
 public:
  LambdaCut(Cplx lambda, const Mu& mu);

  Cplx lambda() const { return lambda_; }
  double a() const { return a_; }
  // |x lambda| < 2|mu|
  bool inner(double x) const;
  // (x lambda)^{-mu} inside, e^{R_j lambda x} outside
  Cplx F(int j, double x) const;
  Mat2 F_matrix(double x) const { return Mat2::diag(F(1, x), F(2, x)); }

 private:
  Cplx lambda_, mu_;
  double a_;
};

// Q~(t, lambda) = (mu/t) J - lambda I and its inverse.
Mat2 resolvent_inverse(double t, Cplx lambda, const Mu& mu);

struct LForms {
  Mat2 direct;  // (Q~^{-1} Q)' + Q~^{-1}(QBQ + QBQ~ + Q~BQ)
  Mat2 closed;  // Q~^{-1}(Q' - (q1^2+q2^2)B) + Q~^{-1}(mu/t)(Q~^{-1} J Q / t - 2 q2 B)
};
LForms L_kernel_forms(double t, Cplx lambda, const Potential& q, const Mu& mu);
Mat2 L_kernel(double t, Cplx lambda, const Potential& q, const Mu& mu);

// N(x,t) = F2(t)^2 F1(x)/F2(x) B1 + F1(t)F2(t) B2
Mat2 N_kernel(double x, double t, Cplx lambda, const Mu& mu);

struct RegularityCertificate {
  Cplx det_direct;  // det(I - B Q~^{-1} Q B / 2)
  Cplx det_closed;  // 1 + (4 q2 mu/x + q1^2 + q2^2)/(4d)
  double distance;  // |det - 1|
  double bound;     // (2C|lambda| + 2C^2)/(2|lambda|^2), C = max(|q1|, |q2|) at x
};
RegularityCertificate regularity_certificate(double x, Cplx lambda, const Potential& q,
                                             const Mu& mu);

// Grade of the panel at 0 for integrands ~ t^{p0 - 2 Re mu}.
double singular_grade(const Mu& mu, const Potential& q);

struct PerturbedConfig {
  PicardConfig picard{};
  int order = 16;
  double contraction_limit = 0.9;
  double q_tol = 1e-15;  // integrals over (a, inf) stop where |Q| + |Q'| < q_tol
  // Volterra form only up to |Im(x lambda)| = volterra_growth; C(x)C^{-1}(t)
  // cancels e^{2|Im t lambda|} there. Beyond, S is carried by the RK integrator.
  double volterra_growth = 3.0;
  IntegratorConfig continuation{};
};

// S^_j(x) = C^_j(x lambda) + int_0^x C(x,l)C^{-1}(t,l)(t/x)^{mu_j} B Q S^_j dt on (0, x_max].
class VolterraSolution {
 public:
  VolterraSolution(double x_max, Cplx lambda, const Potential& q, const ModelSystem& model,
                   const PerturbedConfig& cfg = {});

  Cplx lambda() const { return lambda_; }
  double x_max() const { return x_max_; }
  int iterations() const { return iterations_; }
  // end of the Volterra part; RK continuation beyond
  double x_volterra() const { return x_v_; }
  // columns S^_1, S^_2
  Mat2 S_hat(double x) const;
  // columns S_j = x^{mu_j} S^_j
  Mat2 S(double x) const;

 private:
  Cplx lambda_;
  double x_max_;
  const ModelSystem* model_;
  Cplx mu_;
  // int_0^x (t/x)^{2mu} y2.x dt for x in the graded panel
  Cplx near_zero(double x, const std::vector<Mat2>& raw) const;

  Mat2 S_volterra(double x) const;
  Mat2 S_continued(double x) const;

  std::unique_ptr<QuadratureGrid> grid_;
  std::vector<Mat2> raw_, integrand_;
  Sweep<Mat2> sweep_;
  int iterations_ = 0;

  double x_v_;
  Potential q_;
  IntegratorConfig rk_;
  std::vector<double> ck_x_;
  std::vector<Mat2> ck_S_;
};

VolterraSolution solve_volterra_S(double x_max, Cplx lambda, const Potential& q,
                                  const ModelSystem& model, const PerturbedConfig& cfg = {});

// U_j(x, lambda) with E_j = U_j F_j(x lambda); x > 0, arg lambda in (0, pi/2].
class BirkhoffSolution {
 public:
  BirkhoffSolution(Cplx lambda, const Potential& q, const ModelSystem& model,
                   const PerturbedConfig& cfg = {});

  Cplx lambda() const { return cut_.lambda(); }
  const LambdaCut& cut() const { return cut_; }
  int iterations(int j) const { return iters_[j - 1]; }
  double contraction(int j) const { return contraction_[j - 1]; }
  // Largest grid point used for the (a, inf) integrals.
  double x_far() const { return x_far_; }
  // Nodes of the collocation grid (both regions), for sup-norm sampling.
  std::vector<double> nodes() const;

  Mat2 U0(double x) const;
  Mat2 U(double x) const;
  Mat2 E(double x) const;
  // x = 0 limit of U.
  Mat2 U_at_zero() const;

 private:
  struct Column;
  Vec2 eval(int j, double x) const;

  LambdaCut cut_;
  const Potential* q_;
  const ModelSystem* model_;
  PerturbedConfig cfg_;
  double x_far_;
  std::unique_ptr<QuadratureGrid> inner_, outer_;
  // basis and kernel data at nodes
  std::vector<Mat2> U0_in_, U0_out_, Qin_, R_out_, BL_out_;
  std::vector<Cplx> w_in_;
  Mat2 U0a_, Ra_;
  std::shared_ptr<Column> col_[2];
  int iters_[2] = {0, 0};
  double contraction_[2] = {0, 0};
};

BirkhoffSolution solve_birkhoff_U(Cplx lambda, const Potential& q, const ModelSystem& model,
                                  const PerturbedConfig& cfg = {});

}  // namespace dirac
