#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dirac/numerics.hpp"

namespace dirac {

class Mu;

// Q(t) = q1(t) K + q2(t) J on t > 0, with derivatives.
class Potential {
 public:
  using Fn = std::function<Cplx(double)>;

  // p0: exponent of |Q| ~ t^{p0} near 0 (used to grade meshes).
  // support: |Q| + |Q'| is negligible beyond it (infinity if unknown).
  Potential(std::string name, Fn q1, Fn q2, Fn dq1, Fn dq2, double p0 = 0.0,
            double support = 1e300);

  static Potential zero();
  // q_j = a_j exp(-t^2)
  static Potential gauss(Cplx a1, Cplx a2);
  // q_j = a_j t^p exp(-t)
  static Potential decay_pow(Cplx a1, Cplx a2, double p);
  // Monotone cubic (pchip) interpolation of samples; zero beyond the last sample.
  static Potential sampled(const std::vector<double>& t, const std::vector<Cplx>& q1,
                           const std::vector<Cplx>& q2);

  const std::string& name() const { return name_; }
  bool is_zero() const { return zero_; }
  double small_t_exponent() const { return p0_; }
  Cplx q1(double t) const { return q1_(t); }
  Cplx q2(double t) const { return q2_(t); }
  Cplx dq1(double t) const { return dq1_(t); }
  Cplx dq2(double t) const { return dq2_(t); }
  Mat2 Q(double t) const;
  Mat2 dQ(double t) const;
  // Point beyond which |Q| + |Q'| stays below tol (scanned).
  double cutoff(double tol) const;
  // int_0^1 t^{-2 Re mu}|Q| + int_1^inf |Q|, by quadrature.
  double weight_integral(const Mu& mu) const;

 private:
  std::string name_;
  Fn q1_, q2_, dq1_, dq2_;
  double p0_, support_;
  bool zero_ = false;
};

}  // namespace dirac
