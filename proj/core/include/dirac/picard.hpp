#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "dirac/numerics.hpp"

namespace dirac {

struct PicardConfig {
  double tol = 1e-13;       // on sup |x_{k+1} - x_k| / max(1, sup |x_k|)
  int max_iter = 400;
  double tail_cutoff = 40;  // |t| beyond which the Jost tail is taken from the large-|x| expansion
  double divergence_factor = 1e6;
  double contraction_limit = 0;  // > 0: give up once the measured ratio exceeds it

  void validate() const;
};

template <class S>
struct PicardResult {
  S state;
  int iterations = 0;
  double residual = 0;
  double contraction = 0;  // last measured ratio of consecutive residuals
};

inline double sup_norm(double v) { return std::abs(v); }
inline double sup_norm(Cplx v) { return std::abs(v); }
inline double sup_norm(const Vec2& v) { return norm_inf(v); }
inline double sup_norm(const Mat2& m) { return max_abs(m); }
template <class T>
double sup_norm(const std::vector<T>& v) {
  double n = 0;
  for (const auto& e : v) n = std::max(n, sup_norm(e));
  return n;
}

inline double sup_distance(double a, double b) { return std::abs(a - b); }
inline double sup_distance(Cplx a, Cplx b) { return std::abs(a - b); }
inline double sup_distance(const Vec2& a, const Vec2& b) { return norm_inf(a - b); }
inline double sup_distance(const Mat2& a, const Mat2& b) { return max_abs(a - b); }
template <class T>
double sup_distance(const std::vector<T>& a, const std::vector<T>& b) {
  double n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n = std::max(n, sup_distance(a[i], b[i]));
  return n;
}

// Successive approximations x_{k+1} = step(x_k).
template <class S, class Step>
PicardResult<S> picard_solve(S initial, Step&& step, const PicardConfig& cfg) {
  cfg.validate();
  PicardResult<S> r;
  double ref = sup_norm(initial);
  double prev_res = -1, prev_ratio = -1;
  S cur = std::move(initial);
  for (int k = 1; k <= cfg.max_iter; ++k) {
    S next = step(cur);
    double n = sup_norm(next);
    if (k == 1) ref = std::max(ref, n);
    if (!std::isfinite(n) || n > cfg.divergence_factor * std::max(ref, 1e-300)) {
      std::ostringstream os;
      os << "iterate norm " << n << " after " << k << " steps";
      throw Error(ErrorCode::Diverged, os.str());
    }
    double res = sup_distance(next, cur);
    cur = std::move(next);
    r.iterations = k;
    r.residual = res;
    if (prev_res > 0 && res > 0) {
      double ratio = res / prev_res;
      r.contraction = prev_ratio > 0 ? std::sqrt(ratio * prev_ratio) : ratio;
      prev_ratio = ratio;
    }
    prev_res = res;
    if (res <= cfg.tol * std::max(1.0, n)) {
      r.state = std::move(cur);
      return r;
    }
    if (cfg.contraction_limit > 0 && k >= 4 && r.contraction > cfg.contraction_limit) {
      std::ostringstream os;
      os << "measured contraction " << r.contraction << " exceeds " << cfg.contraction_limit;
      throw Error(ErrorCode::NoConvergence, os.str());
    }
  }
  std::ostringstream os;
  os << "residual " << r.residual << " after " << cfg.max_iter << " iterations (contraction "
     << r.contraction << ")";
  throw Error(ErrorCode::NoConvergence, os.str());
}

}  // namespace dirac
