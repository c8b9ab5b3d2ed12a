#pragma once

#include "stablemix/linear_system.hpp"

namespace stablemix {

struct MaxPrinTrial {
  double min_u = 0.0;
  double f_inf = 0.0;
  bool pass = false;
  bool solver_ok = true;
  std::string error;
};

struct MaxPrinReport {
  std::vector<MaxPrinTrial> trials;
  bool pass = false;
  int failures = 0;
  bool principle_applicable = true;  // false for the sign-changing control
};

// Solves `trials` problems with seeded random smooth bump sources and checks
// min u >= -1e-8 * |f|_inf. With nonneg_sources = false runs the control
// case (sign-changing f, principle not applicable; minima recorded only).
// Trials are independent and split across `threads` workers; results are
// deterministic in (seed, trial index) regardless of the thread count.
MaxPrinReport check_max_principle(const MixedProblem& base, int trials,
                                  std::uint64_t seed,
                                  bool nonneg_sources = true, int threads = 1);

}  // namespace stablemix
