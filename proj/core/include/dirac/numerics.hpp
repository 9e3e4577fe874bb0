#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "dirac/errors.hpp"

namespace dirac {

using Cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Cplx kI{0.0, 1.0};

bool finite(Cplx z);

struct Vec2 {
  Cplx x{}, y{};

  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(Cplx s) { x *= s; y *= s; return *this; }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(Cplx s, Vec2 a) { return a *= s; }
  friend Vec2 operator*(Vec2 a, Cplx s) { return a *= s; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double norm_inf(const Vec2& v);

struct Mat2 {
  Cplx a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diag(Cplx d1, Cplx d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 from_columns(const Vec2& c1, const Vec2& c2) { return {c1.x, c2.x, c1.y, c2.y}; }

  Vec2 col(int j) const { return j == 1 ? Vec2{a11, a21} : Vec2{a12, a22}; }
  void set_col(int j, const Vec2& v);
  Cplx det() const { return a11 * a22 - a12 * a21; }
  Cplx trace() const { return a11 + a22; }
  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  // Adjugate; equals the inverse when det = 1.
  Mat2 adj() const { return {a22, -a12, -a21, a11}; }

  Mat2& operator+=(const Mat2& o);
  Mat2& operator-=(const Mat2& o);
  Mat2& operator*=(Cplx s);
  friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
  friend Mat2 operator-(const Mat2& a) { return {-a.a11, -a.a12, -a.a21, -a.a22}; }
  friend Mat2 operator*(Cplx s, Mat2 a) { return a *= s; }
  friend Mat2 operator*(Mat2 a, Cplx s) { return a *= s; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend Vec2 operator*(const Mat2& a, const Vec2& v) {
    return {a.a11 * v.x + a.a12 * v.y, a.a21 * v.x + a.a22 * v.y};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// Max row sum.
double norm_inf(const Mat2& m);
double max_abs(const Mat2& m);

namespace mat {
inline constexpr Mat2 I{1.0, 0.0, 0.0, 1.0};
inline constexpr Mat2 B{0.0, 1.0, -1.0, 0.0};
inline constexpr Mat2 J{0.0, 1.0, 1.0, 0.0};
inline constexpr Mat2 K{1.0, 0.0, 0.0, -1.0};
inline constexpr Mat2 I1{1.0, 0.0, 0.0, 0.0};
inline constexpr Mat2 I2{0.0, 0.0, 0.0, 1.0};
inline constexpr Mat2 B1{0.0, 1.0, 0.0, 0.0};   // I1 B
inline constexpr Mat2 B2{0.0, 0.0, -1.0, 0.0};  // I2 B
}  // namespace mat

// Throws SingularMatrix when |det| < 1e-13 ||m||^2.
Mat2 mat2_inverse(const Mat2& m);

// Point of the plane cut along (-inf, 0], arg in (-pi, pi].
class BranchPoint {
 public:
  BranchPoint(double r, double phi);
  static BranchPoint from(Cplx z);

  double r() const { return r_; }
  double phi() const { return phi_; }
  Cplx value() const { return std::polar(r_, phi_); }
  Cplx log() const { return {std::log(r_), phi_}; }
  Cplx power(Cplx xi) const { return std::exp(xi * log()); }
  // -x on the same sheet convention.
  BranchPoint negated() const;
  BranchPoint scaled(Cplx s) const { return from(value() * s); }

 private:
  double r_, phi_;
};

inline Cplx branch_power(const BranchPoint& x, Cplx xi) { return x.power(xi); }

}  // namespace dirac
