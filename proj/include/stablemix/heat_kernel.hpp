#pragma once

#include "stablemix/grid.hpp"
#include "stablemix/operator_spec.hpp"

namespace stablemix {

// Fourier multiplier A(xi) = line_normalization(s)*symbol(xi) + a_const|xi|^2
// of the constant-coefficient elliptic operator; A(0)=0, even, positive away
// from the origin.
class MixedSymbol {
 public:
  MixedSymbol(OperatorSpec op, double a_const);
  double operator()(Vec2 xi) const;
  double s() const { return op_.s; }
  double a_const() const { return a_; }
  const OperatorSpec& spec() const { return op_; }

 private:
  OperatorSpec op_;
  double a_;
  double ks_;
  double p_;
  std::vector<SpectralMeasure::Node> nodes_;
};

struct KernelSlice {
  std::shared_ptr<const GridDomain> grid;
  double t = 0.0;
  std::vector<double> values;
  double mass = 0.0;      // h^n * sum of values (exactly exp(-A(0)t) by DFT)
  double max_imag = 0.0;  // discarded imaginary residue
};

// Inverse transform of exp(-A(xi) t) on the grid (odd points-per-axis so a
// node sits at the origin). Errors when the frequency grid does not resolve
// the decay (largest-frequency value above 1e-14).
KernelSlice heat_kernel(const MixedSymbol& symbol,
                        std::shared_ptr<const GridDomain> grid, double t);

// Quadrature of (1 + |x|^{2s-delta}) H(t,x); requires 0 < delta < 2s.
double moment_check(const KernelSlice& k, double s, double delta);

// max over grid edges of |H(x)-H(y)|/h.
double lipschitz_seminorm(const KernelSlice& k);

// Periodic convolution of two slices on a shared grid.
std::vector<double> convolve_periodic(const KernelSlice& a,
                                      const KernelSlice& b);

// |v - H(1,.)*v|_inf over the inner quarter box (|x|_inf <= halfwidth/4);
// the convolution is periodic on v's grid.
double smoothing_invariance(const MixedSymbol& symbol, const Field& v);

struct SymbolBounds {
  double lambda = 0.0;   // min over sampled xi != 0 of A/min(|xi|^{2s},|xi|^2)
  double Lambda = 0.0;   // max over sampled xi of A/max(|xi|^{2s},|xi|^2)
};
SymbolBounds symbol_sandwich(const MixedSymbol& symbol, double xi_max,
                             int samples_per_axis);

struct LiouvilleReport {
  double defect_constant = 0.0;
  double defect_affine = 0.0;
  double defect_harmonic = 0.0;
  double oscillation = 0.0;  // of the harmonic field over the check region
  double ratio = 0.0;        // defect_harmonic / oscillation
  int points = 0;
};

// Convolution fixed-point harness: constants, affine fields, and a field made
// discretely harmonic inside a large box by prescribed smooth band data.
LiouvilleReport liouville_harness(const OperatorSpec& spec, double a_const,
                                  int points, double halfwidth,
                                  double band_width, double data_frequency);

}  // namespace stablemix
