#pragma once

#include "stablemix/linear_system.hpp"
#include "stablemix/util.hpp"

namespace stablemix {

// Axis-aligned box in coordinates used as the seminorm region.
struct Region {
  Vec2 lo{0.0, 0.0};
  Vec2 hi{0.0, 0.0};
};

struct HolderReport {
  double order = 0.0;
  std::vector<double> scales;
  std::vector<double> seminorms;
  double fitted_exponent = 0.0;
  double fit_stderr = 0.0;
  double fit_residual = 0.0;
  bool bounded = false;
  std::string region_desc;
};

// Scale-localized Holder quotient: writing order = k + sigma with
// sigma in (0,1] and k = ceil(order)-1, the max over point pairs at distance
// in [scale, 2*scale] of |D^k u(x) - D^k u(y)| / |x-y|^sigma. Derivatives are
// centered differences; orders above 2 are out of reach of the second-order
// discretization and rejected. 2D uses seeded pair sampling (1e5 per scale).
double holder_seminorm(const Field& u, double order, const Region& region,
                       double scale, std::uint64_t seed = 17);

// Seminorms across dyadic scales (4h, 8h, ...) per order, the log-log
// exponent fit, and the boundedness flag (non-increase over the three finest
// scales, 10% jitter allowance).
std::vector<HolderReport> fit_exponent(const Field& u, const Region& region,
                                       const std::vector<double>& orders,
                                       std::uint64_t seed = 17);

// Slope of log(oscillation at scale) vs log(scale) over dyadic scales; used
// to recover generator exponents of rough fields.
LinearFit recover_exponent(const Field& u, const Region& region,
                           std::uint64_t seed = 17);

// Fits u(x) ~ c d(x)^kappa over boundary-adjacent Omega points with
// d in [4h, 0.1 diam]; throws on degenerate data or fewer than 6 points.
double boundary_exponent(const Field& u, const GridDomain& grid,
                         LinearFit* fit_out = nullptr);

struct InteriorExperimentConfig {
  double s = 0.75;
  std::string coef_kind = "smooth-sine";
  double alpha = 0.5;
  double a_minus = 1.0, a_plus = 2.0;
  std::string f_kind = "smooth";  // smooth | weierstrass
  double gamma = 0.9;             // Holder label of f
  int points = 513;
  double box_halfwidth = 2.0;
  std::uint64_t seed = 17;
};

struct InteriorExperimentResult {
  std::vector<HolderReport> reports;
  std::string case_label;  // "a" or "b"
  std::vector<std::string> flags;
  double threshold = 0.0;  // min(2s + alpha + gamma, 2)
  SolveReport solve;
};

InteriorExperimentResult interior_experiment(const InteriorExperimentConfig&);

}  // namespace stablemix
