#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "dirac/fault.hpp"

using namespace dirac;
using namespace dirac::cli;

namespace {

struct Flags {
  std::string config_file;
  std::string mu, c10, potential, a1, a2, potential_file, family, output, format;
  double p = 0;
  bool p_set = false;
  std::vector<std::string> x, lambda, suites;
  double picard_tol = 0, rtol = 0, atol = 0;
  int order = 0;
  std::string inject;
  bool dump_config = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_file, "JSON config file; flags override its fields");
  app->add_option("--mu", f.mu, "mu, e.g. 0.3 or 0.3+0.1i");
  app->add_option("--c10", f.c10, "normalization c10");
  app->add_option("--potential", f.potential, "zero | gauss | decay_pow | sampled");
  app->add_option("--a1", f.a1, "potential amplitude a1");
  app->add_option("--a2", f.a2, "potential amplitude a2");
  app->add_option("--p", f.p, "decay_pow exponent")->each([&](const std::string&) { f.p_set = true; });
  app->add_option("--potential-file", f.potential_file, "samples: t q1_re q1_im q2_re q2_im per row");
  app->add_option("--x", f.x, "grid points (complex allowed for C and e)")->delimiter(',');
  app->add_option("--lambda", f.lambda, "spectral parameters")->delimiter(',');
  app->add_option("--picard-tol", f.picard_tol, "Picard stopping tolerance");
  app->add_option("--order", f.order, "Gauss-Legendre order per panel");
  app->add_option("--rtol", f.rtol, "Runge-Kutta relative tolerance");
  app->add_option("--atol", f.atol, "Runge-Kutta absolute tolerance");
  app->add_option("-o,--output", f.output, "output file (default stdout)");
  app->add_option("--format", f.format, "json | csv");
  app->add_flag("--dump-config", f.dump_config, "print the resolved config and exit");
}

RunConfig resolve(const Flags& f) {
  RunConfig c = f.config_file.empty() ? RunConfig{} : load_config(f.config_file);
  if (!f.mu.empty()) c.mu = parse_complex(f.mu);
  if (!f.c10.empty()) c.c10 = parse_complex(f.c10);
  if (!f.potential.empty()) c.potential.name = f.potential;
  if (!f.a1.empty()) c.potential.a1 = parse_complex(f.a1);
  if (!f.a2.empty()) c.potential.a2 = parse_complex(f.a2);
  if (f.p_set) c.potential.p = f.p;
  if (!f.potential_file.empty()) {
    c.potential.file = f.potential_file;
    if (f.potential.empty()) c.potential.name = "sampled";
  }
  if (!f.family.empty()) c.family = f.family;
  if (!f.x.empty()) {
    c.x.clear();
    for (const auto& s : f.x) c.x.push_back(parse_complex(s));
  }
  if (!f.lambda.empty()) {
    c.lambda.clear();
    for (const auto& s : f.lambda) c.lambda.push_back(parse_complex(s));
  }
  if (f.picard_tol > 0) c.picard_tol = f.picard_tol;
  if (f.order > 0) c.order = f.order;
  if (f.rtol > 0) c.rtol = f.rtol;
  if (f.atol > 0) c.atol = f.atol;
  if (!f.output.empty()) c.output = f.output;
  if (!f.format.empty()) c.format = f.format;
  if (!f.suites.empty()) c.suites = f.suites;
  return c;
}

void fail(const std::string& code, int exit, const std::string& msg) {
  std::cerr << dump(error_object(code, exit, msg));
}

fault::Kind parse_fault(const std::string& s) {
  if (s.empty() || s == "none") return fault::Kind::none;
  if (s == "L_sign") return fault::Kind::L_sign;
  if (s == "g2_kernel") return fault::Kind::g2_kernel;
  if (s == "F_breakpoint") return fault::Kind::F_breakpoint;
  throw ConfigError("unknown --inject value '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and verification front end for the singular Dirac system"};
  app.require_subcommand(1);
  Flags f;
  auto* solve = app.add_subcommand("solve", "evaluate C, e, S, E or U on a grid");
  add_common(solve, f);
  solve->add_option("--family", f.family, "C | e | S | E | U");
  auto* stokes = app.add_subcommand("stokes", "connection matrices gamma0, beta0, gamma(lambda)");
  add_common(stokes, f);
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, f);
  verify->add_option("--suite", f.suites, "restrict to these suites")->delimiter(',');
  verify->add_option("--inject", f.inject)->group("");
  auto* asym = app.add_subcommand("asymptotics", "compare S with its large |x lambda| form");
  add_common(asym, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("ConfigError", 2, e.what());
    return 2;
  }

  try {
    RunConfig cfg = resolve(f);
    if (f.dump_config) {
      std::cout << dump(to_json(cfg));
      return 0;
    }
    fault::set(parse_fault(f.inject));
    Result r;
    if (*solve) r = cmd_solve(cfg);
    else if (*stokes) r = cmd_stokes(cfg);
    else if (*verify) r = cmd_verify(cfg);
    else r = cmd_asymptotics(cfg);
    const std::string text = cfg.format == "csv" ? r.csv : dump(r.doc);
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output);
      if (!out) throw ConfigError("cannot write " + cfg.output);
      out << text;
    }
    return r.exit;
  } catch (const ConfigError& e) {
    fail("ConfigError", 2, e.what());
    return 2;
  } catch (const Error& e) {
    int code = exit_code(e.code());
    fail(to_string(e.code()), code, e.what());
    return code;
  }
}
