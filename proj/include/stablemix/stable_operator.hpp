#pragma once

#include <functional>
#include <span>

#include "stablemix/grid.hpp"
#include "stablemix/operator_spec.hpp"

namespace stablemix {

// Far-field handling: ExteriorConstant integrates the field's exterior_value
// beyond the last radial node (exact for Dirichlet fields and global
// constants); None truncates there (for fields understood to continue
// smoothly, e.g. the affine annihilation checks).
enum class TailModel { ExteriorConstant, None };

// u(x+y) + u(x-y) - 2u(x); off-grid points use the field's interpolation
// rule (multilinear) or exterior_value.
double second_difference(const Field& u, std::size_t at, Vec2 y);

// Radial quadrature on grid-aligned nodes: the Taylor zone [0, mh) is
// integrated analytically against a directional second difference taken at
// the matched radius m'h ~ mh*sqrt((1-s)/(2-s)) (this choice cancels the
// fourth-derivative term of the zone integral while keeping the weight
// nonnegative), the middle zone uses product-quadratic panels with exact
// moments of r^{-1-2s}, and the far field beyond the last node is analytic.
// Weights are one-sided; callers double them for the full line. Node k
// (in grid cells) carries weight w[k - first]; the entries strictly between
// the matched radius and the cut are zero.
struct RadialRule {
  int m = 0;                // cut in grid cells (mid-zone start)
  int first = 0;            // matched Taylor node, < m
  double cut = 0.0;         // m*h
  std::vector<double> w;    // weight of delta(u,x,theta*k*h), k = first..last
  double r_eff = 0.0;       // last node
};
RadialRule build_radial_rule(double s, double h, int m, double tail_radius);

// Operator spec resolved against a grid (auto-filled cut/tail, flattened
// directional nodes, cached radial weights).
struct QuadraturePlan {
  double s = 0.5;
  double h = 0.0;
  RadialRule radial;
  std::vector<SpectralMeasure::Node> nodes;
  double total_mass = 0.0;
  double tail_coefficient = 0.0;  // 2*mass*r_eff^{-2s}/s
};
QuadraturePlan make_plan(const OperatorSpec& spec, const GridDomain& grid);

// The second-difference average against |r|^{-1-2s} dr dmu at a grid point.
// Generator orientation: constants are annihilated, the diagonal weight is
// negative; the Fourier multiplier is -line_normalization(s)*symbol(xi).
double apply_L(const QuadraturePlan& plan, const Field& u, std::size_t at,
               TailModel tail = TailModel::ExteriorConstant);
double apply_L(const OperatorSpec& spec, const Field& u, std::size_t at,
               TailModel tail = TailModel::ExteriorConstant);

// Function-backed variant on geometric radial nodes (spec.radial_points_per
// _decade per decade, product-linear panels, exact evaluations). fn must
// vanish at distance > support_radius from `at`.
double apply_L(const OperatorSpec& spec, const std::function<double(Vec2)>& fn,
               Vec2 at, double support_radius);

struct Stencil {
  int dim = 1;
  std::vector<std::array<int, 2>> offsets;  // +- pairs listed explicitly
  std::vector<double> weights;              // >= 0, equal on +- pairs
  double diagonal = 0.0;                    // -(sum of weights + tail_coefficient)
  double tail_coefficient = 0.0;

  // Exterior-zero evaluation plus tail_coefficient * exterior.
  double apply(const Field& u, std::size_t at) const;
};

// Dense enumeration of the plan's quadrature as grid offsets. Capped at 256
// points per axis in 1D and 128 in 2D; larger grids use the fast applicator.
Stencil assemble_stencil(const OperatorSpec& spec, const GridDomain& grid);

// Enumerates (offset, weight) contributions of the plan (diagonal excluded);
// used by the stencil assembly and the convolution kernels.
void scatter_weights(const QuadraturePlan& plan, const GridDomain& grid,
                     const std::function<void(int, int, double)>& emit);

// Fast full-grid application of the plan with exterior-zero convention:
// per-axis SIMD convolution when every direction is axis-aligned, padded FFT
// convolution otherwise. Instances own scratch buffers; not thread-safe.
class NonlocalApplicator {
 public:
  NonlocalApplicator(const OperatorSpec& spec,
                     std::shared_ptr<const GridDomain> grid);
  ~NonlocalApplicator();
  NonlocalApplicator(const NonlocalApplicator&) = delete;
  NonlocalApplicator& operator=(const NonlocalApplicator&) = delete;

  // y = (defL)u over all grid points, u treated as 0 outside the box.
  void apply(std::span<const double> u, std::span<double> y);
  double diagonal() const { return diagonal_; }
  const QuadraturePlan& plan() const { return plan_; }

 private:
  struct Impl;
  QuadraturePlan plan_;
  std::shared_ptr<const GridDomain> grid_;
  double diagonal_ = 0.0;
  std::unique_ptr<Impl> impl_;
};

// (1/2) sum over x, directions and radii of
// (u(x)-u(x+theta r))(v(x)-v(x+theta r)) weights — evaluated through the
// operator identity E(u,v) = -h^n <v, (defL)u>, symmetrized so the call is
// exactly symmetric in (u,v). Fields must be exterior-zero on a shared grid.
double bilinear_energy(const OperatorSpec& spec, const Field& u,
                       const Field& v);

}  // namespace stablemix
