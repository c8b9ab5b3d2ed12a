#include "stablemix/barrier.hpp"

#include <cmath>
#include <sstream>

#include "stablemix/stable_operator.hpp"

namespace stablemix {

double Barrier::value(Vec2 p) const {
  const double dx = p[0] - center[0], dy = p[1] - center[1];
  const double r2 = dx * dx + dy * dy;
  if (r2 >= R * R) return 0.0;
  return 1.0 - std::exp(beta * (r2 - R * R));
}

namespace {

struct Annulus {
  Vec2 center;
  double R;
};

Annulus fit_annulus(const GridDomain& g, std::vector<std::string>& notes) {
  const auto idx = g.omega_indices();
  if (idx.empty()) throw ConfigError("Omega mask is empty");
  Vec2 centroid{0.0, 0.0};
  for (std::size_t k : idx) {
    const Vec2 p = g.point(k);
    centroid[0] += p[0];
    centroid[1] += p[1];
  }
  centroid[0] /= idx.size();
  centroid[1] /= idx.size();

  auto radii = [&](Vec2 c) {
    double rmin = 1e300, rmax = 0.0;
    for (std::size_t k : idx) {
      const Vec2 p = g.point(k);
      const double r = std::hypot(p[0] - c[0], p[1] - c[1]);
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    return std::pair{rmin, rmax};
  };

  Vec2 c = centroid;
  for (int pass = 0; pass < 64; ++pass) {
    const auto [rmin, rmax] = radii(c);
    if (rmax <= 3.0 * rmin * (1.0 - 1e-12)) {
      const double R = 0.5 * (4.0 * rmax / 3.0 + 4.0 * rmin);
      std::ostringstream os;
      os << "annulus center (" << c[0] << "," << c[1] << ") R=" << R
         << (pass ? " after centroid shift" : " at centroid");
      notes.push_back(os.str());
      return {c, R};
    }
    // Shift along the first axis until Omega clears the inner ball.
    const double need = (4.0 * rmax / 3.0) / 4.0;  // inner radius for R = 4rmax/3
    c[0] += (need - rmin) + 0.1 * rmax;
  }
  throw ConfigError("Omega does not fit a barrier annulus");
}

}  // namespace

Barrier build_barrier(std::shared_ptr<const GridDomain> grid,
                      const OperatorSpec& spec, double beta_init) {
  spec.validate_or_throw();
  if (!(beta_init > 0.0)) throw ConfigError("beta_init must be positive");
  const auto& g = *grid;
  Barrier bar;
  const Annulus ann = fit_annulus(g, bar.notes);
  bar.center = ann.center;
  bar.R = ann.R;

  const auto omega = g.omega_indices();
  const int n = g.dim;
  double beta = beta_init;
  for (int step = 0; step <= 20; ++step, beta *= 2.0) {
    bar.beta = beta;
    auto wfn = [&](Vec2 p) { return bar.value(p); };
    double worst = -1e300;
    for (std::size_t k : omega) {
      const Vec2 x = g.point(k);
      const double dx = x[0] - bar.center[0], dy = x[1] - bar.center[1];
      const double rho2 = dx * dx + dy * dy;
      const double e = std::exp(beta * (rho2 - bar.R * bar.R));
      const double neg_lap = e * (2.0 * n * beta + 4.0 * beta * beta * rho2);
      const double support = bar.R + std::sqrt(rho2) + 1e-9;
      const double lw = apply_L(spec, wfn, x, support);
      worst = std::max(worst, lw + neg_lap);
    }
    bar.max_generator_defect = worst;
    if (worst <= 1.0) {
      bar.w = Field::from_function(grid, wfn, 0.0);
      return bar;
    }
  }
  throw NumericError("barrier search failed: beta exceeded 2^20 * beta_init");
}

}  // namespace stablemix
