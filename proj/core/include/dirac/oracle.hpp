#pragma once

#include <functional>
#include <vector>

#include "dirac/model.hpp"
#include "dirac/numerics.hpp"
#include "dirac/potential.hpp"

namespace dirac {

enum class SystemKind {
  model,   // B Y' + Q0 Y = Y
  scaled,  // B Y' + Q0 Y = lambda Y
  full,    // B Y' + (Q0 + Q) Y = lambda Y, real x > 0 only
};

struct OdeSystem {
  SystemKind kind = SystemKind::model;
  Cplx mu = 0.3;
  Cplx lambda = 1.0;
  const Potential* q = nullptr;

  static OdeSystem model(const Mu& mu) { return {SystemKind::model, mu.value(), 1.0, nullptr}; }
  static OdeSystem scaled(const Mu& mu, Cplx lambda) {
    return {SystemKind::scaled, mu.value(), lambda, nullptr};
  }
  static OdeSystem full(const Mu& mu, Cplx lambda, const Potential& q) {
    return {SystemKind::full, mu.value(), lambda, &q};
  }

  // Q0(x) + Q(x)
  Mat2 coefficient(Cplx x) const;
  Cplx spectral() const { return kind == SystemKind::model ? Cplx(1.0) : lambda; }
  // Y' = rhs(x) Y
  Mat2 rhs(Cplx x) const;
};

struct ContourSpec {
  std::vector<Cplx> waypoints;
  double min_distance = 0.05;

  void validate() const;
  double length() const;
};

struct IntegratorConfig {
  double rtol = 1e-12;
  double atol = 1e-13;
  long max_steps = 200000;
  int order = 5;  // Dormand-Prince 5(4), the only pair offered

  void validate() const;
};

struct IntegrationResult {
  Mat2 Y;
  long steps = 0;
  long rejected = 0;
};

IntegrationResult integrate(const OdeSystem& sys, const ContourSpec& contour, const Mat2& Y0,
                            const IntegratorConfig& cfg = {});

// |B Y' + coefficient Y - spectral Y|_inf with a 5-point central difference
// along `dir` (unit complex direction).
double residual(const std::function<Mat2(Cplx)>& Y, Cplx x, const OdeSystem& sys, double h,
                Cplx dir = 1.0);
double residual(const std::function<Vec2(Cplx)>& y, Cplx x, const OdeSystem& sys, double h,
                Cplx dir = 1.0);

}  // namespace dirac
