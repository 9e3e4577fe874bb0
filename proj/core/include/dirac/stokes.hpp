#pragma once

#include <vector>

#include "dirac/perturbed.hpp"

namespace dirac {

// gamma0(lambda) from e(x, lambda) = C(x, lambda) gamma0(lambda) at |x lambda| = matching point.
StokesMatrix compute_gamma0_lambda(Cplx lambda, const ModelSystem& model);

struct GammaLambdaReport {
  StokesMatrix gamma;
  std::vector<double> ladder;     // x_k used for the x -> 0 limit
  double spread = 0;              // max relative spread of the limit quantity over the ladder
  double matching_defect = 0;     // max_j |E_j - (S gamma)_j| / |E_j| at the validation points
  std::vector<double> validation; // validation points
};

// gamma(lambda) from U_2j(0) (first row) and the (35) limit (second row); E = S gamma is the check.
GammaLambdaReport gamma_lambda_report(Cplx lambda, const Potential& q, const ModelSystem& model,
                                      const PerturbedConfig& cfg = {});
StokesMatrix compute_gamma_lambda(Cplx lambda, const Potential& q, const ModelSystem& model,
                                  const PerturbedConfig& cfg = {});
StokesMatrix compute_gamma_lambda(Cplx lambda, const Potential& q, const Mu& mu,
                                  const Normalization& norm, const PerturbedConfig& cfg = {});
StokesMatrix compute_beta_lambda(const StokesMatrix& gamma);

// Least-squares slope of log(value) against log(scale).
double fit_decay_exponent(const std::vector<double>& scale, const std::vector<double>& value);

struct StokesAsymptote {
  std::vector<Cplx> lambdas;
  std::vector<StokesMatrix> gamma;
  std::vector<double> spread, matching_defect;
  // |gamma_jk(lambda) lambda^{-mu_j} - gamma0_jk| per rung, index [j-1][k-1]
  std::vector<double> deviation[2][2];
  // fitted exponents for column 1 (NaN when the deviations sit at round-off)
  double exponent[2] = {0, 0};
  double column2_defect = 0;  // max relative column-2 deviation
  double nu = 0;
};

StokesAsymptote verify_theorem6(const std::vector<Cplx>& lambda_ladder, const Potential& q,
                                const ModelSystem& model, const PerturbedConfig& cfg = {});

struct RemarkSelectors {
  int l = -1;  // 1 iff arg(x lambda) in (-pi, -pi/2] u (pi/2, pi]
  int m = 0;

  static RemarkSelectors from(double x, Cplx lambda);
};

struct AsymptoticS {
  Mat2 value;    // leading order of S(x, lambda)
  Mat2 dlambda;  // leading order of dS/dlambda
};

// |x lambda| >= 1; beta0_j is read as beta0_{2j}.
AsymptoticS asymptotic_S(double x, Cplx lambda, const Mu& mu, const StokesMatrix& beta0);

}  // namespace dirac
