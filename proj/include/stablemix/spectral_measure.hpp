#pragma once

#include <string>
#include <vector>

#include "stablemix/grid.hpp"

namespace stablemix {

struct SpectralAtom {
  Vec2 dir;       // unit vector; 1D uses (+-1, 0)
  double weight;  // >= 0
};

// Nonnegative finite even measure on S^{n-1}, n in {1,2}: atoms plus an
// optionally sampled density. In 2D the density is sampled at equispaced
// angles 2*pi*k/M and integrated by the trapezoid rule; in 1D the sphere is
// the pair {-1,+1} and the density reduces to two point weights.
struct SpectralMeasure {
  int dim = 1;
  std::vector<SpectralAtom> atoms;
  std::vector<double> density;  // 2D: M samples; 1D: {at +1, at -1}; may be empty
  double total_mass = 0.0;      // cached: atom weights + density quadrature

  static SpectralMeasure atomic_1d(double w_plus, double w_minus);
  static SpectralMeasure axis_2d(double weight_per_atom);
  static SpectralMeasure uniform(int dim, double c, int samples = 256);
  static SpectralMeasure density_2d(std::vector<double> samples);

  double density_quadrature() const;
  void refresh_mass();
  // Flattened directional nodes (atoms exactly, density with trapezoid
  // weights); each node's weight multiplies a full-line radial integral.
  struct Node {
    Vec2 dir;
    double weight;
  };
  std::vector<Node> directional_nodes() const;
};

// Empty iff all invariants hold; entries name the failed invariant and the
// offending atom/sample.
std::vector<std::string> validate(const SpectralMeasure& m);

struct EllipticityReport {
  double lambda1_est = 0.0;         // inf_nu of integral |nu.theta| dmu
  double lambda1_power2s_est = 0.0; // same with |nu.theta|^{2s}
  double total_mass = 0.0;
  int sampled_directions = 0;
};

EllipticityReport ellipticity(const SpectralMeasure& m, double s,
                              int n_dirs = 720);

// Parses the measure spec text format:
//   kind = atomic | density | uniform
//   atom = <angle_degrees>, <weight>      (2D)
//   atom = +1, <weight> / atom = -1, <weight>   (1D)
//   density = uniform | cospower          (catalog name)
//   scale = <c>                            (density multiplier)
SpectralMeasure parse_measure_text(const std::string& text, int dim);
SpectralMeasure load_measure_file(const std::string& path, int dim);

}  // namespace stablemix
