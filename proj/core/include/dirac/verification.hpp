#pragma once

#include <string>
#include <vector>

#include "dirac/oracle.hpp"
#include "dirac/stokes.hpp"

namespace dirac {

// One measured check: pass iff value <= bound.
struct Check {
  std::string suite;
  std::string name;
  std::string tag;  // e.g. "Thm2:det"
  double value = 0;
  double bound = 0;
  bool pass = false;
  std::string note;
};

struct VerifyConfig {
  std::vector<Cplx> mus{0.2, 0.3, 0.45, 0.7, Cplx(0.3, 0.1)};
  Normalization norm{};
  // potential for the perturbed and Stokes suites
  Potential q = Potential::decay_pow(1.0, 1.0, 0.7);
  // mu values for the |lambda|-ladders (nu = 0.6 and nu = 1)
  std::vector<Cplx> ladder_mus{0.3, 0.7};
  std::vector<Cplx> lambda_ladder{Cplx(0, 20), Cplx(0, 40), Cplx(0, 80), Cplx(0, 160)};
  PerturbedConfig perturbed{};
  IntegratorConfig integrator{};
  unsigned seed = 20240611;
};

std::vector<Check> suite_numerics(const VerifyConfig& cfg);
std::vector<Check> suite_determinants(const VerifyConfig& cfg);
std::vector<Check> suite_connection(const VerifyConfig& cfg);
std::vector<Check> suite_symmetry(const VerifyConfig& cfg);
std::vector<Check> suite_jost_rate(const VerifyConfig& cfg);
std::vector<Check> suite_lambda_scaling(const VerifyConfig& cfg);
std::vector<Check> suite_kernels(const VerifyConfig& cfg);
std::vector<Check> suite_perturbed(const VerifyConfig& cfg);
std::vector<Check> suite_stokes_lambda(const VerifyConfig& cfg);
std::vector<Check> suite_asymptotics(const VerifyConfig& cfg);
std::vector<Check> suite_oracle(const VerifyConfig& cfg);

struct SuiteEntry {
  const char* name;
  std::vector<Check> (*run)(const VerifyConfig&);
};
const std::vector<SuiteEntry>& verification_suites();

std::vector<Check> verify_all(const VerifyConfig& cfg);

}  // namespace dirac
