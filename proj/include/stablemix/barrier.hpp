#pragma once

#include "stablemix/grid.hpp"
#include "stablemix/operator_spec.hpp"

namespace stablemix {

// Exponential bump 1 - e^{beta(|x-center|^2 - R^2)} truncated at radius R:
// positive on Omega-bar, concave inside the ball, zero outside it.
struct Barrier {
  double R = 0.0;
  Vec2 center{0.0, 0.0};
  double beta = 0.0;
  Field w;

  double value(Vec2 p) const;
  // max over Omega grid points of (defL w)(x) - (Laplacian w)(x)
  double max_generator_defect = 0.0;
  std::vector<std::string> notes;
};

// Fits an annulus R/4 <= |x - center| <= 3R/4 around Omega (shifting the
// center deterministically when Omega surrounds its own centroid), then
// doubles beta from beta_init until max over Omega of (defL w - Lap w) <= 1.
// Throws when beta exceeds 2^20 * beta_init or no annulus fits.
Barrier build_barrier(std::shared_ptr<const GridDomain> grid,
                      const OperatorSpec& spec, double beta_init);

}  // namespace stablemix
