#pragma once

#include <string>

#include "stablemix/grid.hpp"
#include "stablemix/util.hpp"

namespace stablemix {

// Grid samples of the weight a(x) with its Holder label and bounds.
struct CoefficientField {
  Field samples;
  double alpha = 1.0;     // Holder exponent label, in (0,1)
  double a_minus = 1.0;   // 0 < a_minus <= samples <= a_plus
  double a_plus = 1.0;
  std::string generator_tag;

  std::vector<std::string> validate() const;
  bool is_constant_one() const;
};

// Catalog: `constant`, `smooth-sine` (C-infinity, any alpha label valid),
// `weierstrass-alpha` (lacunary cosine sum with exponent alpha, truncated at
// the grid Nyquist scale; phases drawn from `seed`).
CoefficientField make_coefficient(const std::string& kind, double alpha,
                                  double a_minus, double a_plus,
                                  std::shared_ptr<const GridDomain> grid,
                                  std::uint64_t seed = 7);

// Flux-form second-order stencil with arithmetic face averages; Dirichlet
// exterior_value at mask boundaries.
double apply_div_a_grad(const CoefficientField& a, const Field& u,
                        std::size_t at);

// Lacunary cosine profile sum_j 2^{-alpha j} cos(2^j k0 x + phi_j), truncated
// at the Nyquist scale of `h`; shared by the coefficient catalog and the
// rough right-hand sides of the regularity experiments.
std::vector<double> weierstrass_profile(int n_points, double x0, double h,
                                        double alpha, double k0,
                                        std::uint64_t seed);

}  // namespace stablemix
