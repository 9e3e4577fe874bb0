#include "dirac/numerics.hpp"

#include <algorithm>
#include <string>

namespace dirac {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::DegenerateRecurrence: return "DegenerateRecurrence";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::MatchingPointUnavailable: return "MatchingPointUnavailable";
    case ErrorCode::NearSingularResolvent: return "NearSingularResolvent";
    case ErrorCode::RegularityLost: return "RegularityLost";
    case ErrorCode::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::StiffnessSuspected: return "StiffnessSuspected";
    case ErrorCode::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double norm_inf(const Vec2& v) { return std::max(std::abs(v.x), std::abs(v.y)); }

void Mat2::set_col(int j, const Vec2& v) {
  if (j == 1) {
    a11 = v.x;
    a21 = v.y;
  } else {
    a12 = v.x;
    a22 = v.y;
  }
}

Mat2& Mat2::operator+=(const Mat2& o) {
  a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
  return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
  a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
  return *this;
}

Mat2& Mat2::operator*=(Cplx s) {
  a11 *= s; a12 *= s; a21 *= s; a22 *= s;
  return *this;
}

double norm_inf(const Mat2& m) {
  return std::max(std::abs(m.a11) + std::abs(m.a12), std::abs(m.a21) + std::abs(m.a22));
}

double max_abs(const Mat2& m) {
  return std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21), std::abs(m.a22)});
}

Mat2 mat2_inverse(const Mat2& m) {
  const Cplx d = m.det();
  const double n = norm_inf(m);
  if (!(std::abs(d) >= 1e-13 * n * n) || n == 0.0)
    throw Error(ErrorCode::SingularMatrix, "|det| = " + std::to_string(std::abs(d)));
  return m.adj() * (1.0 / d);
}

BranchPoint::BranchPoint(double r, double phi) : r_(r), phi_(phi) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw Error(ErrorCode::DomainViolation, "branch point needs r > 0");
  if (!(phi > -kPi && phi <= kPi))
    throw Error(ErrorCode::DomainViolation, "branch point needs phi in (-pi, pi]");
}

BranchPoint BranchPoint::from(Cplx z) {
  double phi = std::arg(z);
  if (phi <= -kPi) phi = kPi;
  return {std::abs(z), phi};
}

BranchPoint BranchPoint::negated() const {
  return {r_, phi_ > 0.0 ? phi_ - kPi : phi_ + kPi};
}

}  // namespace dirac
