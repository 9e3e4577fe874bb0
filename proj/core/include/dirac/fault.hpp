#pragma once

// Seeded defects for mutation-sensitivity checks. Off unless a test or
// `dirac verify --inject` turns one on.

namespace dirac::fault {

enum class Kind { none, L_sign, g2_kernel, F_breakpoint };

Kind active();
void set(Kind k);
bool on(Kind k);

// RAII toggle used by tests.
class Scope {
 public:
  explicit Scope(Kind k) : prev_(active()) { set(k); }
  ~Scope() { set(prev_); }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  Kind prev_;
};

}  // namespace dirac::fault
