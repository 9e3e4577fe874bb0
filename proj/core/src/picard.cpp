#include "dirac/picard.hpp"

#include <atomic>

#include "dirac/fault.hpp"

namespace dirac {

void PicardConfig::validate() const {
  if (!(tol > 0) || max_iter < 1 || !(tail_cutoff > 0) || !(divergence_factor > 1))
    throw Error(ErrorCode::InvalidArgument, "PicardConfig needs tol > 0, max_iter >= 1, T > 0");
}

namespace fault {

namespace {
std::atomic<Kind> g_kind{Kind::none};
}

Kind active() { return g_kind.load(); }
void set(Kind k) { g_kind.store(k); }
bool on(Kind k) { return g_kind.load(std::memory_order_relaxed) == k; }

}  // namespace fault

}  // namespace dirac
