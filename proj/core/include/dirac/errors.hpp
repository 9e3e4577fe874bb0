#pragma once

#include <stdexcept>
#include <string>

namespace dirac {

enum class ErrorCode {
  SingularMatrix,
  NoConvergence,
  Diverged,
  DegenerateRecurrence,
  TruncationInsufficient,
  DomainViolation,
  MatchingPointUnavailable,
  NearSingularResolvent,
  RegularityLost,
  ExtrapolationUnstable,
  StepLimitExceeded,
  StiffnessSuspected,
  StencilOutOfDomain,
  InvalidArgument,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dirac
