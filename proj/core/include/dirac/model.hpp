#pragma once

#include <optional>
#include <vector>

#include "dirac/numerics.hpp"
#include "dirac/picard.hpp"

namespace dirac {

class Mu {
 public:
  // Requires Re mu > 0 and 1/2 - mu not a positive integer.
  explicit Mu(Cplx mu);
  // Skips the invariant (mu -> 0 limit checks only).
  static Mu unchecked(Cplx mu);

  Cplx value() const { return mu_; }
  // mu_j = (-1)^j mu
  Cplx mu_j(int j) const { return j == 1 ? -mu_ : mu_; }
  double nu() const;

 private:
  Mu() = default;
  Cplx mu_{};
};

struct Normalization {
  Cplx c10{1.0}, c20{1.0};

  Normalization() = default;
  explicit Normalization(Cplx c10_) : c10(c10_), c20(1.0 / c10_) {}
};

// Coefficients of C^(x) = sum x^{2k} [[x c_{1,2k+1}, c_{2,2k}], [-c_{1,2k}, x c_{2,2k+1}]].
class SeriesSolution {
 public:
  SeriesSolution(const Mu& mu, const Normalization& norm, int K);

  const Mu& mu() const { return mu_; }
  const Normalization& norm() const { return norm_; }
  int order() const { return K_; }
  // c_{j,k}, k = 0..2K+1.
  Cplx coeff(int j, int k) const { return c_[j - 1][k]; }
  // C^(w) summed to at most K, stopping once the remaining terms are below tol
  // relative to max(1, |C^|). Throws TruncationInsufficient otherwise.
  Mat2 hat(Cplx w, double tol = 1e-12) const;
  // 10 x first omitted term magnitude at |w| = r.
  double tail_estimate(double r) const;

 private:
  Mu mu_;
  Normalization norm_;
  int K_;
  std::vector<Cplx> c_[2];
};

SeriesSolution compute_series(const Mu& mu, const Normalization& norm, int K);
// C(x) = C^(x) diag(x^{mu_1}, x^{mu_2}).
Mat2 eval_C(const BranchPoint& x, const SeriesSolution& s, double tol = 1e-12);
Mat2 eval_e0(Cplx x);

// Jost solutions z_j, e_j = e^{R_j x} z_j.
Cplx jost_R(int j);
Vec2 jost_z0(int j);
// g^j(x, t) of the integral equation for z_j.
Mat2 g_kernel(int j, Cplx x, Cplx t);
// x0 = 4 pi |mu| (1 + |mu|) / sin delta0
double jost_x0(const Mu& mu, double delta0);

struct JostValue {
  int j = 1;
  Vec2 z, e;
  int iterations = 0;
  double residual = 0;
};

// Optimally truncated large-|x| expansion of z_j; err gets the last term size.
Vec2 jost_asymptotic(int j, Cplx x, const Mu& mu, double* err = nullptr);

// Contour along arg t = arg x. j = 1 needs Im x >= 0, j = 2 needs Im x <= 0.
JostValue jost_radial(int j, const BranchPoint& x, const Mu& mu, const PicardConfig& cfg = {});
// Contour t = x + xi, xi >= 0. Needs |arg x| <= pi - delta0 and |x| >= x0.
JostValue jost_horizontal(int j, const BranchPoint& x, const Mu& mu, double delta0,
                          const PicardConfig& cfg = {});

class JostSolution {
 public:
  explicit JostSolution(const Mu& mu, double delta0 = kPi / 4, PicardConfig cfg = {});

  const Mu& mu() const { return mu_; }
  double delta0() const { return delta0_; }
  double x0() const { return x0_; }
  // Any x with |x| > |mu| + 1 in the sector of z_j.
  Vec2 z(int j, const BranchPoint& x) const;
  Vec2 e(int j, const BranchPoint& x) const;
  Mat2 e_matrix(const BranchPoint& x) const;

 private:
  Mu mu_;
  double delta0_, x0_;
  PicardConfig cfg_;
};

enum class StokesRole { gamma0, beta0, gamma_lambda, beta_lambda };
const char* to_string(StokesRole r);

struct StokesMatrix {
  Mat2 m;
  StokesRole role = StokesRole::gamma0;
  std::optional<Cplx> lambda;
};

struct ModelConfig {
  double delta0 = kPi / 4;
  PicardConfig picard{};
  double series_tol = 1e-12;
  // |x| from which e comes from the Jost equation rather than C gamma0.
  double switch_radius = 6.0;
  // 0 picks max(6, 3|mu|).
  double matching_point = 0.0;
};

StokesMatrix compute_gamma0(const Mu& mu, const Normalization& norm, const ModelConfig& cfg = {});
StokesMatrix compute_beta0(const StokesMatrix& gamma0);

// Series, Jost and connection data for one (mu, c10).
class ModelSystem {
 public:
  explicit ModelSystem(const Mu& mu, const Normalization& norm = Normalization{},
                       const ModelConfig& cfg = {});

  const Mu& mu() const { return mu_; }
  const Normalization& norm() const { return norm_; }
  const ModelConfig& config() const { return cfg_; }
  const SeriesSolution& series() const { return series_; }
  const JostSolution& jost() const { return jost_; }
  const StokesMatrix& gamma0() const { return gamma0_; }
  const StokesMatrix& beta0() const { return beta0_; }
  double matching_point() const { return xm_; }

  Mat2 C(const BranchPoint& x) const;
  Mat2 C_hat(Cplx w) const;
  // C^ through e(w) beta0 where the Jost form is available; the series cancels
  // like e^{|w|} eps along oscillatory directions.
  Mat2 C_hat_stable(Cplx w) const;
  // Jost where |x| >= switch radius and |arg x| <= pi - delta0, else C gamma0.
  Mat2 e(const BranchPoint& x) const;
  Vec2 z(int j, const BranchPoint& x) const;

 private:
  Mu mu_;
  Normalization norm_;
  ModelConfig cfg_;
  SeriesSolution series_;
  JostSolution jost_;
  double xm_;
  StokesMatrix gamma0_, beta0_;
};

double default_matching_point(const Mu& mu);

struct Lemma1Defects {
  double jost = 0;    // |-K e_2(-x) - e_1(x)| / |e_1(x)|
  double series = 0;  // max_j |K C_j(-x) - (-1)^j e^{-i pi mu_j} C_j(x)| / |C_j(x)|
};
// x in D+ (arg x in (0, pi]).
Lemma1Defects check_lemma1(const BranchPoint& x, const ModelSystem& model);

enum class ModelFamily { C, e };
// C(x, lambda) = C(x lambda) H(1/lambda),  e(x, lambda) = e(x lambda).
Mat2 eval_model_lambda(double x, Cplx lambda, ModelFamily which, const ModelSystem& model);

}  // namespace dirac
