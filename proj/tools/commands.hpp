#pragma once

#include <string>

#include "run_config.hpp"

namespace dirac::cli {

struct Result {
  Json doc;
  std::string csv;
  int exit = 0;
};

Result cmd_solve(const RunConfig& cfg);
Result cmd_stokes(const RunConfig& cfg);
Result cmd_verify(const RunConfig& cfg);
Result cmd_asymptotics(const RunConfig& cfg);

// 2 config, 3 solver failure, 4 domain violation
int exit_code(ErrorCode c);
Json error_object(const std::string& code, int exit, const std::string& message);

}  // namespace dirac::cli
