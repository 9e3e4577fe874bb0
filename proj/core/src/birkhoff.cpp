#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirac/perturbed.hpp"

namespace dirac {

struct BirkhoffSolution::Column {
  std::vector<Vec2> vin, lout;  // integrands on the two regions
  Sweep<Vec2> P, Lam, X;        // X: Omega (column 1) or Gamma (column 2)
  Vec2 Pa, ua, aterm;
};

namespace {

const Cplx kHalfInvI = 1.0 / (2.0 * kI);

}  // namespace

BirkhoffSolution::BirkhoffSolution(Cplx lambda, const Potential& q, const ModelSystem& model,
                                   const PerturbedConfig& cfg)
    : cut_(lambda, model.mu()), q_(&q), model_(&model), cfg_(cfg) {
  const double arg = std::arg(lambda);
  if (!(arg > 0.0 && arg <= kPi / 2 + 1e-15))
    throw Error(ErrorCode::DomainViolation, "Birkhoff solutions need arg lambda in (0, pi/2]");
  const double a = cut_.a();
  const Cplx c = 2.0 * kI * lambda;
  const Mu& mu = model.mu();

  inner_ = std::make_unique<QuadratureGrid>(graded_grid(a, a, a, singular_grade(mu, q), 12, cfg.order));
  x_far_ = std::max(q.cutoff(cfg.q_tol), 2.0 * a);
  outer_ = std::make_unique<QuadratureGrid>(
      segment_panels(a, x_far_, 2.0 / std::abs(lambda), 1.0), cfg.order);

  const std::size_t ni = inner_->size(), no = outer_->size();
  U0_in_.resize(ni);
  Qin_.resize(ni);
  w_in_.resize(ni);
  for (std::size_t k = 0; k < ni; ++k) {
    double t = inner_->nodes()[k].real();
    U0_in_[k] = U0(t);
    Qin_[k] = q.Q(t);
    w_in_[k] = BranchPoint::from(t * lambda).power(-2.0 * mu.value());
  }
  U0_out_.resize(no);
  R_out_.resize(no);
  BL_out_.resize(no);
  std::vector<Mat2> Minv(no);
  auto regular = [&](const Mat2& R, double t) {
    Mat2 M = mat::I + 0.5 * R;
    if (std::abs(M.det()) < 1e-3) {
      std::ostringstream os;
      os << "det(I - B Q~^{-1} Q B / 2) = " << std::abs(M.det()) << " at x = " << t;
      throw Error(ErrorCode::RegularityLost, os.str());
    }
    return mat2_inverse(M);
  };
  for (std::size_t k = 0; k < no; ++k) {
    double t = outer_->nodes()[k].real();
    U0_out_[k] = U0(t);
    R_out_[k] = resolvent_inverse(t, lambda, mu) * q.Q(t);
    BL_out_[k] = mat::B * L_kernel(t, lambda, q, mu);
    Minv[k] = regular(R_out_[k], t);
  }
  U0a_ = U0(a);
  Ra_ = resolvent_inverse(a, lambda, mu) * q.Q(a);
  const Mat2 Mainv = regular(Ra_, a);
  const Cplx ea = std::exp(c * a);

  PicardConfig pc = cfg.picard;
  pc.contraction_limit = cfg.contraction_limit;

  for (int j = 1; j <= 2; ++j) {
    auto col = std::make_shared<Column>();
    // state layout: inner nodes, outer nodes, U_j(a)
    auto unpack_sweeps = [&](const std::vector<Vec2>& u) {
      col->vin.resize(ni);
      col->lout.resize(no);
      for (std::size_t k = 0; k < ni; ++k)
        col->vin[k] = w_in_[k] * (U0_in_[k].transpose() * (Qin_[k] * u[k]));
      for (std::size_t k = 0; k < no; ++k)
        col->lout[k] = U0_out_[k].transpose() * (BL_out_[k] * u[ni + k]);
      col->ua = u[ni + no];
      col->P = sweep_forward(*inner_, col->vin);
      col->Pa = col->P.boundary.back();
      col->Lam = sweep_forward(*outer_, col->lout);
      col->X = j == 1 ? sweep_backward(*outer_, col->lout, c) : sweep_forward(*outer_, col->lout, c);
      col->aterm = U0a_.transpose() * (mat::B * (Ra_ * col->ua));
    };
    auto region1 = [&](const Mat2& U0x, const Vec2& Px) {
      Vec2 br;
      if (j == 1) {
        Vec2 Om_a = col->X.boundary.front();
        br = mat::B1 * Px - mat::B2 * (col->Pa - Px) + 0.5 * (mat::B2 * (ea * Om_a)) +
             0.5 * ea * (mat::B2 * col->aterm);
      } else {
        br = mat::B * Px;
      }
      return U0x.col(j) + kHalfInvI * (U0x * br);
    };
    auto region2 = [&](const Mat2& U0x, const Mat2& Mi, double x, const Vec2& Lx, const Vec2& Xx) {
      Vec2 br;
      if (j == 1) {
        br = mat::B1 * col->Pa - 0.5 * (mat::B1 * Lx) + 0.5 * (mat::B2 * Xx) -
             0.5 * (mat::B1 * col->aterm);
      } else {
        Cplx ex = std::exp(c * x), exa = std::exp(c * (x - a));
        br = (ex * mat::B1 + mat::B2) * col->Pa - 0.5 * (mat::B1 * Xx + mat::B2 * Lx) -
             0.5 * ((exa * mat::B1 + mat::B2) * col->aterm);
      }
      return Mi * (U0x.col(j) + kHalfInvI * (U0x * br));
    };
    auto step = [&](const std::vector<Vec2>& u) {
      unpack_sweeps(u);
      std::vector<Vec2> out(ni + no + 1);
      for (std::size_t k = 0; k < ni; ++k) out[k] = region1(U0_in_[k], col->P.node[k]);
      for (std::size_t k = 0; k < no; ++k)
        out[ni + k] = region2(U0_out_[k], Minv[k], outer_->nodes()[k].real(), col->Lam.node[k],
                              col->X.node[k]);
      Vec2 Xa = j == 1 ? col->X.boundary.front() : Vec2{};
      out[ni + no] = region2(U0a_, Mainv, a, Vec2{}, Xa);
      return out;
    };
    std::vector<Vec2> init(ni + no + 1);
    for (std::size_t k = 0; k < ni; ++k) init[k] = U0_in_[k].col(j);
    for (std::size_t k = 0; k < no; ++k) init[ni + k] = U0_out_[k].col(j);
    init[ni + no] = U0a_.col(j);
    auto res = picard_solve(std::move(init), step, pc);
    unpack_sweeps(res.state);
    iters_[j - 1] = res.iterations;
    contraction_[j - 1] = res.contraction;
    col_[j - 1] = col;
  }
}

std::vector<double> BirkhoffSolution::nodes() const {
  std::vector<double> out;
  for (auto t : inner_->nodes()) out.push_back(t.real());
  for (auto t : outer_->nodes()) out.push_back(t.real());
  return out;
}

Mat2 BirkhoffSolution::U0(double x) const {
  const Cplx lambda = cut_.lambda();
  const BranchPoint w = BranchPoint::from(x * lambda);
  if (cut_.inner(x)) {
    // e(w) F^{-1} = C^(w) diag(1, w^{2 mu}) gamma0
    Mat2 C = model_->C_hat(w.value());
    Cplx p = w.power(2.0 * model_->mu().value());
    return Mat2::from_columns(C.col(1), p * C.col(2)) * model_->gamma0().m;
  }
  return Mat2::from_columns(model_->z(1, w), model_->z(2, w));
}

Vec2 BirkhoffSolution::eval(int j, double x) const {
  const Column& col = *col_[j - 1];
  const double a = cut_.a();
  const Cplx lambda = cut_.lambda();
  const Cplx c = 2.0 * kI * lambda;
  Mat2 U0x;
  if (x == 0.0) {
    Mat2 C = model_->C_hat(0.0);
    U0x = Mat2::from_columns(C.col(1), Vec2{}) * model_->gamma0().m;
  } else {
    U0x = U0(x);
  }
  const Cplx ea = std::exp(c * a);
  if (x < a) {
    Vec2 Px{};
    if (x > 0) {
      auto [p, s] = inner_->locate(x);
      Px = forward_at(*inner_, col.vin, col.P, 0.0, p, s);
    }
    Vec2 br;
    if (j == 1)
      br = mat::B1 * Px - mat::B2 * (col.Pa - Px) + 0.5 * (mat::B2 * (ea * col.X.boundary.front())) +
           0.5 * ea * (mat::B2 * col.aterm);
    else
      br = mat::B * Px;
    return U0x.col(j) + kHalfInvI * (U0x * br);
  }
  Vec2 Lx, Xx;
  if (x >= x_far_) {
    Lx = col.Lam.boundary.back();
    Xx = j == 1 ? Vec2{} : std::exp(c * (x - x_far_)) * col.X.boundary.back();
  } else {
    auto [p, s] = outer_->locate(x);
    Lx = forward_at(*outer_, col.lout, col.Lam, 0.0, p, s);
    Xx = j == 1 ? backward_at(*outer_, col.lout, col.X, c, p, s)
                : forward_at(*outer_, col.lout, col.X, c, p, s);
  }
  Vec2 br;
  if (j == 1) {
    br = mat::B1 * col.Pa - 0.5 * (mat::B1 * Lx) + 0.5 * (mat::B2 * Xx) - 0.5 * (mat::B1 * col.aterm);
  } else {
    Cplx ex = std::exp(c * x), exa = std::exp(c * (x - a));
    br = (ex * mat::B1 + mat::B2) * col.Pa - 0.5 * (mat::B1 * Xx + mat::B2 * Lx) -
         0.5 * ((exa * mat::B1 + mat::B2) * col.aterm);
  }
  Mat2 R = resolvent_inverse(x, lambda, model_->mu()) * q_->Q(x);
  return mat2_inverse(mat::I + 0.5 * R) * (U0x.col(j) + kHalfInvI * (U0x * br));
}

Mat2 BirkhoffSolution::U(double x) const {
  if (!(x >= 0)) throw Error(ErrorCode::DomainViolation, "Birkhoff solutions live on x > 0");
  return Mat2::from_columns(eval(1, x), eval(2, x));
}

Mat2 BirkhoffSolution::E(double x) const {
  if (!(x > 0)) throw Error(ErrorCode::DomainViolation, "E needs x > 0");
  return U(x) * cut_.F_matrix(x);
}

Mat2 BirkhoffSolution::U_at_zero() const {
  return Mat2::from_columns(eval(1, 0.0), eval(2, 0.0));
}

BirkhoffSolution solve_birkhoff_U(Cplx lambda, const Potential& q, const ModelSystem& model,
                                  const PerturbedConfig& cfg) {
  return BirkhoffSolution(lambda, q, model, cfg);
}

}  // namespace dirac
