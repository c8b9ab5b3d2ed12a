#pragma once

#include <map>

#include "stablemix/linear_system.hpp"

namespace stablemix {

// Plain-text key-value run configuration (documented in the README). All
// defaults are materialized after parsing so reports embed the fully
// resolved configuration.
struct RunConfig {
  int dimension = 1;
  double box_halfwidth = 1.5;
  int grid_points = 257;
  std::string omega_kind;  // interval | disk | box (default by dimension)
  double omega_a = -1.0, omega_b = 1.0;
  double omega_cx = 0.0, omega_cy = 0.0, omega_radius = 1.0;

  double s = 0.5;
  bool measure_set = false;
  SpectralMeasure measure;
  std::string measure_desc = "none";
  std::string measure_file;
  int inner_cut_cells = 4;
  double tail_radius = 0.0;  // 0 = auto
  int radial_points_per_decade = 64;

  std::string coef_kind = "constant";
  double coef_alpha = 0.5;
  double coef_min = 1.0, coef_max = 1.0;

  std::string problem = "solve";
  bool local_on = true;
  bool nonlocal_on = true;
  double lambda = 0.0;
  double tol = 1e-9;
  int max_iter = 60;
  int trials = 20;
  double t_time = 1.0;
  double delta_frac = 0.25;
  std::string f_kind = "smooth";  // smooth | weierstrass | one
  double f_gamma = 0.3;
  std::string apply_field = "gaussian";
  int pad_factor = 0;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int threads = 1;
  std::string method = "direct";
  bool gnuplot = false;

  std::shared_ptr<const GridDomain> make_grid() const;
  OperatorSpec make_operator() const;
  MixedProblem make_problem() const;
};

RunConfig parse_config_text(const std::string& text,
                            const std::string& base_dir);
RunConfig parse_config(const std::string& path);

// Sorted key=value lines of the fully resolved configuration; hashed into
// the run record and embedded in reports.
std::string canonical_config(const RunConfig& cfg);

}  // namespace stablemix
