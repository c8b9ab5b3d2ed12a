#pragma once

#include "stablemix/spectral_measure.hpp"

namespace stablemix {

// Parameters of the discrete stable operator: fractional order, spectral
// measure and the radial-quadrature controls.
struct OperatorSpec {
  double s = 0.5;                    // in (0,1)
  SpectralMeasure measure;
  double inner_cut = 0.0;            // Taylor-zone radius; 0 = auto (4h)
  double tail_radius = 0.0;          // 0 = auto (2.05 * box diameter)
  int radial_points_per_decade = 64; // geometric rule for function-backed apply

  std::vector<std::string> validate() const;
  void validate_or_throw() const;
};

// Measure integral of |xi.theta|^{2s}; the normalization constant of the
// symbol is fixed to 1, so the atomic pair delta_{+-1} gives 2|xi|^{2s}.
double symbol(const OperatorSpec& spec, Vec2 xi);

// K_s = 2 * int_R (1 - cos u)/|u|^{1+2s} du
//     = 2 sqrt(pi) Gamma(1-s) / (s 4^s Gamma(1/2+s)).
// The radial second-difference integral against |r|^{-1-2s} of e^{i xi.x}
// equals -K_s |xi.theta|^{2s}; every Fourier-side route multiplies the
// measure symbol by this factor so it matches the quadrature route.
double line_normalization(double s);

}  // namespace stablemix
