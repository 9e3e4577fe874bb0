#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dirac/oracle.hpp"
#include "dirac/perturbed.hpp"

namespace dirac::cli {

using Json = nlohmann::ordered_json;

// Bad flags, bad files, invariant violations in the config itself (exit 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PotentialSpec {
  std::string name = "zero";  // zero | gauss | decay_pow | sampled
  Cplx a1{1.0}, a2{1.0};
  double p = 1.0;
  std::string file;  // sampled: rows "t q1_re q1_im q2_re q2_im"
};

struct RunConfig {
  Cplx mu{0.3};
  Cplx c10{1.0};
  PotentialSpec potential;
  std::string family = "C";
  std::vector<Cplx> x;
  std::vector<Cplx> lambda;
  double picard_tol = 1e-13;
  int picard_max_iter = 400;
  int order = 16;
  double rtol = 1e-12;
  double atol = 1e-13;
  std::string output;  // empty: stdout
  std::string format = "json";
  std::vector<std::string> suites;  // verify: empty runs all

  // Throws ConfigError.
  void validate() const;
  Mu make_mu() const;
  Normalization make_norm() const { return Normalization(c10); }
  Potential make_potential() const;
  PerturbedConfig perturbed() const;
  IntegratorConfig integrator() const;
};

// "0.3", "2i", "3-2i", "-1e-3+4.5i", "(3,2)"
Cplx parse_complex(const std::string& s);

Json to_json(Cplx z);
Json to_json(const Mat2& m);
Json to_json(const RunConfig& c);
Cplx complex_from_json(const Json& j);
RunConfig config_from_json(const Json& j);
RunConfig load_config(const std::string& path);

// Numbers with 17 significant digits, fixed field order, two-space indent.
std::string dump(const Json& j);

}  // namespace dirac::cli
