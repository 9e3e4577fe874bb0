#include <cmath>
#include <string>

#include "dirac/model.hpp"

namespace dirac {

Mu::Mu(Cplx mu) : mu_(mu) {
  if (!finite(mu) || !(mu.real() > 0))
    throw Error(ErrorCode::InvalidArgument, "mu must satisfy Re mu > 0");
  Cplx d = 0.5 - mu;
  double n = std::round(d.real());
  if (n >= 1 && std::abs(d - n) < 1e-14)
    throw Error(ErrorCode::InvalidArgument, "1/2 - mu must not be a positive integer");
}

Mu Mu::unchecked(Cplx mu) {
  Mu m;
  m.mu_ = mu;
  return m;
}

double Mu::nu() const { return std::min(1.0, 2.0 * mu_.real()); }

SeriesSolution::SeriesSolution(const Mu& mu, const Normalization& norm, int K)
    : mu_(mu), norm_(norm), K_(K) {
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "series order K must be >= 1");
  for (int j = 1; j <= 2; ++j) {
    auto& c = c_[j - 1];
    c.resize(2 * K + 2);
    c[0] = j == 1 ? norm.c10 : norm.c20;
    for (int k = 0; k <= K; ++k) {
      Cplx den = 2.0 * mu.mu_j(j) + 2.0 * k + 1.0;
      if (std::abs(den) < 1e-14)
        throw Error(ErrorCode::DegenerateRecurrence,
                    "2 mu_" + std::to_string(j) + " + 1 + 2s = 0 at s = " + std::to_string(k));
      c[2 * k + 1] = c[2 * k] / den;
      if (k < K) c[2 * k + 2] = -c[2 * k + 1] / (2.0 * k + 2.0);
    }
  }
}

SeriesSolution compute_series(const Mu& mu, const Normalization& norm, int K) {
  return SeriesSolution(mu, norm, K);
}

Mat2 SeriesSolution::hat(Cplx w, double tol) const {
  Cplx even[2], odd[2];
  const double r = std::abs(w);
  for (int j = 1; j <= 2; ++j) {
    const Cplx mj = mu_.mu_j(j);
    Cplx e = c_[j - 1][0], se = 0, so = 0;
    double scale = 1.0;
    bool done = false;
    for (int k = 0; k <= K_; ++k) {
      Cplx o = e * w / (2.0 * mj + 2.0 * k + 1.0);
      se += e;
      so += o;
      scale = std::max({scale, std::abs(se), std::abs(so)});
      Cplx e_next = -o * w / (2.0 * k + 2.0);
      Cplx o_next = e_next * w / (2.0 * mj + 2.0 * k + 3.0);
      // terms shrink monotonically once k > r/2
      bool tail_small = 10.0 * (std::abs(e_next) + std::abs(o_next)) <= tol * 1e-3 * scale;
      if (tail_small && r < k + 1.0) {
        done = true;
        break;
      }
      e = e_next;
    }
    if (!done)
      throw Error(ErrorCode::TruncationInsufficient,
                  "series order " + std::to_string(K_) + " too small for |x| = " +
                      std::to_string(r));
    even[j - 1] = se;
    odd[j - 1] = so;
  }
  return {odd[0], even[1], -even[0], odd[1]};
}

double SeriesSolution::tail_estimate(double r) const {
  double worst = 0;
  for (int j = 1; j <= 2; ++j) {
    const auto& c = c_[j - 1];
    Cplx ce = -c[2 * K_ + 1] / (2.0 * K_ + 2.0);
    Cplx co = ce / (2.0 * mu_.mu_j(j) + 2.0 * K_ + 3.0);
    double lr = std::log(r);
    double te = std::abs(ce) == 0 ? 0 : std::exp(std::log(std::abs(ce)) + (2 * K_ + 2) * lr);
    double to = std::abs(co) == 0 ? 0 : std::exp(std::log(std::abs(co)) + (2 * K_ + 3) * lr);
    worst = std::max(worst, te + to);
  }
  return 10.0 * worst;
}

Mat2 eval_C(const BranchPoint& x, const SeriesSolution& s, double tol) {
  Mat2 c = s.hat(x.value(), tol);
  Cplx h1 = x.power(s.mu().mu_j(1)), h2 = x.power(s.mu().mu_j(2));
  return {c.a11 * h1, c.a12 * h2, c.a21 * h1, c.a22 * h2};
}

Mat2 eval_e0(Cplx x) {
  Cplx p = std::exp(kI * x), m = std::exp(-kI * x);
  return {kI * p, -kI * m, p, m};
}

}  // namespace dirac
