#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "dirac/stokes.hpp"
#include "dirac/verification.hpp"

namespace dirac::cli {

namespace {

double fd_step(double x, Cplx lambda) { return std::min(0.001 / std::abs(lambda), x / 400.0); }

Json check(const std::string& tag, double value) { return Json{{"tag", tag}, {"value", value}}; }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row(header); }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ += ',';
      out_ += cells[i];
    }
    out_ += '\n';
  }
  void point(Cplx x, Cplx lambda, const Mat2& m, Cplx det, double res) {
    std::vector<std::string> c;
    for (Cplx z : {x, lambda, m.a11, m.a12, m.a21, m.a22, det}) {
      c.push_back(num(z.real()));
      c.push_back(num(z.imag()));
    }
    c.push_back(num(res));
    row(c);
  }
  std::string str() const { return out_; }

 private:
  std::string out_;
};

std::vector<std::string> point_header() {
  return {"x_re",   "x_im",   "lambda_re", "lambda_im", "y11_re", "y11_im", "y12_re", "y12_im",
          "y21_re", "y21_im", "y22_re",    "y22_im",    "det_re", "det_im", "residual_rel"};
}

double real_x(Cplx x) {
  if (x.imag() != 0.0 || !(x.real() > 0))
    throw Error(ErrorCode::DomainViolation, "this family needs real x > 0");
  return x.real();
}

Json header(const std::string& command, const RunConfig& cfg) {
  return Json{{"command", command}, {"version", "0.1.0"}, {"config", to_json(cfg)}};
}

}  // namespace

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return 2;
    case ErrorCode::DomainViolation:
    case ErrorCode::StencilOutOfDomain:
    case ErrorCode::MatchingPointUnavailable:
      return 4;
    default:
      return 3;
  }
}

Json error_object(const std::string& code, int exit, const std::string& message) {
  return Json{{"error", {{"code", code}, {"exit", exit}, {"message", message}}}};
}

Result cmd_solve(const RunConfig& cfg) {
  cfg.validate();
  const Mu mu = cfg.make_mu();
  const Potential q = cfg.make_potential();
  ModelSystem model(mu, cfg.make_norm());
  std::vector<Cplx> xs = cfg.x.empty() ? std::vector<Cplx>{0.5} : cfg.x;
  const std::string& fam = cfg.family;
  const bool model_family = fam == "C" || fam == "e";
  std::vector<Cplx> ls = cfg.lambda;
  if (ls.empty() && !model_family) ls = {fam == "S" ? Cplx(1.0) : Cplx(0.0, 20.0)};

  Result r;
  r.doc = header("solve", cfg);
  Json pts = Json::array();
  Csv csv(point_header());
  auto add = [&](Cplx x, std::optional<Cplx> l, const Mat2& Y, double res, Json extra) {
    Json p{{"x", to_json(x)}};
    if (l) p["lambda"] = to_json(*l);
    p["value"] = to_json(Y);
    p["det"] = to_json(Y.det());
    p["residual_rel"] = check("Oracle:residual", res);
    for (auto it = extra.begin(); it != extra.end(); ++it) p[it.key()] = it.value();
    pts.push_back(p);
    csv.point(x, l.value_or(Cplx(0.0)), Y, Y.det(), res);
  };

  if (model_family) {
    const auto which = fam == "C" ? ModelFamily::C : ModelFamily::e;
    if (ls.empty()) {
      auto sys = OdeSystem::model(mu);
      for (Cplx x : xs) {
        if (x == 0.0) throw Error(ErrorCode::DomainViolation, "x must be nonzero");
        auto Y = [&](Cplx s) {
          BranchPoint b = BranchPoint::from(s);
          return which == ModelFamily::C ? model.C(b) : model.e(b);
        };
        Mat2 v = Y(x);
        double h = std::min(1e-3, std::abs(x) / 400.0);
        double res = residual(Y, x, sys, h, x / std::abs(x)) / norm_inf(v);
        add(x, std::nullopt, v, res, Json::object());
      }
    } else {
      for (Cplx l : ls) {
        auto sys = OdeSystem::scaled(mu, l);
        for (Cplx xc : xs) {
          double x = real_x(xc);
          auto Y = [&](Cplx s) { return eval_model_lambda(s.real(), l, which, model); };
          Mat2 v = Y(x);
          add(xc, l, v, residual(Y, x, sys, fd_step(x, l), 1.0) / norm_inf(v), Json::object());
        }
      }
    }
  } else if (fam == "S") {
    for (Cplx l : ls) {
      double xmax = 0;
      for (Cplx x : xs) xmax = std::max(xmax, real_x(x));
      // room for the difference stencil
      VolterraSolution S(1.01 * xmax, l, q, model, cfg.perturbed());
      auto sys = OdeSystem::full(mu, l, q);
      auto Y = [&](Cplx s) { return S.S(s.real()); };
      for (Cplx xc : xs) {
        double x = real_x(xc);
        Mat2 v = Y(x);
        double res = residual(Y, x, sys, fd_step(x, l), 1.0) / std::max(1.0, norm_inf(v));
        add(xc, l, v, res, Json{{"iterations", S.iterations()}});
      }
    }
  } else {
    for (Cplx l : ls) {
      BirkhoffSolution B(l, q, model, cfg.perturbed());
      auto sys = OdeSystem::full(mu, l, q);
      auto E = [&](Cplx s) { return B.E(s.real()); };
      for (Cplx xc : xs) {
        double x = real_x(xc);
        Mat2 e = E(x);
        double res = residual(E, x, sys, fd_step(x, l), 1.0) / norm_inf(e);
        Json extra{{"a_lambda", B.cut().a()},
                   {"iterations", Json::array({B.iterations(1), B.iterations(2)})}};
        if (fam == "U") {
          Mat2 u = B.U(x), u0 = B.U0(x);
          extra["U0"] = to_json(u0);
          extra["deviation"] = check("Thm5:rate", max_abs(u - u0));
          add(xc, l, u, res, extra);
        } else {
          add(xc, l, e, res, extra);
        }
      }
    }
  }
  r.doc["family"] = fam;
  r.doc["points"] = pts;
  r.csv = csv.str();
  return r;
}

Result cmd_stokes(const RunConfig& cfg) {
  cfg.validate();
  const Mu mu = cfg.make_mu();
  ModelSystem model(mu, cfg.make_norm());
  const Mat2& g = model.gamma0().m;
  const Mat2& b = model.beta0().m;
  const Cplx m = mu.value();
  const Cplx e1 = std::exp(-kI * kPi * mu.mu_j(1)), e2 = std::exp(-kI * kPi * mu.mu_j(2));
  const Cplx cs = std::cos(kPi * m);

  Result r;
  r.doc = header("stokes", cfg);
  r.doc["gamma0"] = to_json(g);
  r.doc["beta0"] = to_json(b);
  r.doc["det_gamma0"] = to_json(g.det());
  r.doc["det_beta0"] = to_json(b.det());
  r.doc["gamma11_gamma21"] = to_json(g.a11 * g.a21);
  r.doc["beta21_beta22"] = to_json(b.a21 * b.a22);
  r.doc["matching_point"] = model.matching_point();
  Json defects = Json::array();
  defects.push_back(check("Thm2:det", std::abs(g.det() - 2.0 * kI)));
  defects.push_back(check("Thm2:row1", std::abs(g.a11 - e1 * g.a12)));
  defects.push_back(check("Thm2:row2", std::abs(g.a21 + e2 * g.a22)));
  defects.push_back(check("Thm2:product", std::abs(g.a11 * g.a21 - 1.0 / (kI * cs))));
  defects.push_back(check("Cor2:det", std::abs(b.det() - 1.0 / (2.0 * kI))));
  defects.push_back(check("Cor2:col1", std::abs(b.a11 - e1 * b.a21)));
  defects.push_back(check("Cor2:col2", std::abs(b.a12 + e2 * b.a22)));
  defects.push_back(check("Cor2:product", std::abs(b.a21 * b.a22 - 1.0 / (4.0 * kI * cs))));
  r.doc["defects"] = defects;

  Csv csv({"lambda_re", "lambda_im", "g11_re", "g11_im", "g12_re", "g12_im", "g21_re", "g21_im",
           "g22_re", "g22_im", "column2_defect", "matching_defect"});
  if (!cfg.lambda.empty()) {
    const Potential q = cfg.make_potential();
    Json ladder = Json::array();
    std::vector<double> mods, d1, d2;
    for (Cplx l : cfg.lambda) {
      const BranchPoint L = BranchPoint::from(l);
      const Cplx s1 = L.power(-mu.mu_j(1)), s2 = L.power(-mu.mu_j(2));
      Mat2 g0l = compute_gamma0_lambda(l, model).m;
      Mat2 scaled{s1 * g0l.a11, s1 * g0l.a12, s2 * g0l.a21, s2 * g0l.a22};
      auto rep = gamma_lambda_report(l, q, model, cfg.perturbed());
      const Mat2& gl = rep.gamma.m;
      double col2 = std::max(std::abs(gl.a12 * s1 - g.a12) / std::abs(g.a12),
                             std::abs(gl.a22 * s2 - g.a22) / std::abs(g.a22));
      Mat2 bl = compute_beta_lambda(rep.gamma).m;
      Json rung{{"lambda", to_json(l)},
                {"gamma0_lambda", to_json(g0l)},
                {"gamma_lambda", to_json(gl)},
                {"beta_lambda", to_json(bl)},
                {"defects",
                 Json::array({check("Thm3:scaling", max_abs(scaled - g)),
                              check("Thm6:column2", col2),
                              check("Thm6:matching", rep.matching_defect),
                              check("Thm6:limit", rep.spread),
                              check("Cor6:det", std::abs(bl.det() * gl.det() - 1.0))})}};
      ladder.push_back(rung);
      mods.push_back(std::abs(l));
      d1.push_back(std::abs(gl.a11 * s1 - g.a11));
      d2.push_back(std::abs(gl.a21 * s2 - g.a21));
      std::vector<std::string> row{num(l.real()), num(l.imag())};
      for (Cplx z : {gl.a11, gl.a12, gl.a21, gl.a22}) {
        row.push_back(num(z.real()));
        row.push_back(num(z.imag()));
      }
      row.push_back(num(col2));
      row.push_back(num(rep.matching_defect));
      csv.row(row);
    }
    r.doc["ladder"] = ladder;
    if (cfg.lambda.size() >= 2) {
      Json fit{{"nu", mu.nu()}};
      auto exponent = [&](const std::vector<double>& d) -> Json {
        if (*std::min_element(d.begin(), d.end()) <= 0) return nullptr;
        return fit_decay_exponent(mods, d);
      };
      fit["exponent_11"] = Json{{"tag", "Thm6:column1"}, {"value", exponent(d1)}};
      fit["exponent_21"] = Json{{"tag", "Thm6:column1"}, {"value", exponent(d2)}};
      r.doc["column1_fit"] = fit;
    }
  }
  r.csv = csv.str();
  return r;
}

Result cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  VerifyConfig vc;
  vc.perturbed = cfg.perturbed();
  vc.integrator = cfg.integrator();
  const auto& all = verification_suites();
  for (const auto& s : cfg.suites)
    if (std::none_of(all.begin(), all.end(), [&](const SuiteEntry& e) { return s == e.name; }))
      throw ConfigError("unknown suite '" + s + "'");

  Result r;
  r.doc = header("verify", cfg);
  Json checks = Json::array();
  Csv csv({"suite", "name", "tag", "value", "bound", "pass"});
  int failed = 0, total = 0;
  for (const auto& s : all) {
    if (!cfg.suites.empty() && std::find(cfg.suites.begin(), cfg.suites.end(), s.name) == cfg.suites.end())
      continue;
    for (const Check& c : s.run(vc)) {
      Json j{{"suite", c.suite}, {"name", c.name}, {"tag", c.tag}, {"value", c.value},
             {"bound", c.bound}, {"pass", c.pass}};
      if (!c.note.empty()) j["note"] = c.note;
      checks.push_back(j);
      std::string quoted = "\"" + c.name + "\"";
      csv.row({c.suite, quoted, c.tag, num(c.value), num(c.bound), c.pass ? "1" : "0"});
      ++total;
      failed += !c.pass;
    }
  }
  r.doc["checks"] = checks;
  r.doc["summary"] = Json{{"total", total}, {"failed", failed}, {"pass", failed == 0}};
  r.csv = csv.str();
  r.exit = failed ? 1 : 0;
  return r;
}

Result cmd_asymptotics(const RunConfig& cfg) {
  cfg.validate();
  const Mu mu = cfg.make_mu();
  const Potential q = cfg.make_potential();
  ModelSystem model(mu, cfg.make_norm());
  std::vector<Cplx> ls = cfg.lambda.empty() ? std::vector<Cplx>{Cplx(0, 1)} : cfg.lambda;

  Result r;
  r.doc = header("asymptotics", cfg);
  r.doc["nu"] = mu.nu();
  Json out = Json::array();
  Csv csv({"x", "lambda_re", "lambda_im", "l", "m", "relative_deviation"});
  for (Cplx l : ls) {
    std::vector<double> xs;
    if (cfg.x.empty())
      for (double s : {8.0, 16.0, 32.0, 64.0}) xs.push_back(s / std::abs(l));
    else
      for (Cplx x : cfg.x) xs.push_back(real_x(x));
    VolterraSolution S(*std::max_element(xs.begin(), xs.end()), l, q, model, cfg.perturbed());
    Json pts = Json::array();
    std::vector<double> mods, devs;
    for (double x : xs) {
      auto as = asymptotic_S(x, l, mu, model.beta0());
      auto sel = RemarkSelectors::from(x, l);
      Mat2 v = S.S(x);
      double d = 0;
      for (int j = 1; j <= 2; ++j)
        d = std::max(d, norm_inf(v.col(j) - as.value.col(j)) / norm_inf(as.value.col(j)));
      pts.push_back(Json{{"x", x},
                         {"l", sel.l},
                         {"m", sel.m},
                         {"S", to_json(v)},
                         {"asymptotic", to_json(as.value)},
                         {"asymptotic_dlambda", to_json(as.dlambda)},
                         {"relative_deviation", check("Rem:S", d)}});
      csv.row({num(x), num(l.real()), num(l.imag()), std::to_string(sel.l), std::to_string(sel.m),
               num(d)});
      mods.push_back(std::abs(x * l));
      devs.push_back(d);
    }
    Json entry{{"lambda", to_json(l)}, {"points", pts}};
    if (xs.size() >= 2 && *std::min_element(devs.begin(), devs.end()) > 0)
      entry["decay_exponent"] = check("Rem:S", fit_decay_exponent(mods, devs));
    out.push_back(entry);
  }
  r.doc["ladders"] = out;
  r.csv = csv.str();
  return r;
}

}  // namespace dirac::cli
