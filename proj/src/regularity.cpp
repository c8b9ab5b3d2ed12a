#include "stablemix/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stablemix/coefficient.hpp"

namespace stablemix {

namespace {

struct DerivativeSet {
  // k = 0: the field itself; k = 1: centered partials per axis. Values are
  // only meaningful one cell away from the box edge.
  std::vector<std::vector<double>> comps;
};

DerivativeSet derivatives(const Field& u, int k) {
  DerivativeSet d;
  const auto& g = *u.grid;
  if (k == 0) {
    d.comps.push_back(u.values);
    return d;
  }
  const int P = g.points;
  const double inv2h = 1.0 / (2.0 * g.h);
  for (int ax = 0; ax < g.dim; ++ax) {
    std::vector<double> c(g.size(), 0.0);
    for (int j = 0; j < (g.dim == 2 ? P : 1); ++j)
      for (int i = 0; i < P; ++i) {
        const int ii = g.dim == 1 ? i : i;
        const int jj = g.dim == 1 ? 0 : j;
        const int di = ax == 0 ? 1 : 0, dj = ax == 1 ? 1 : 0;
        if (ii - di < 0 || ii + di >= P || jj - dj < 0 ||
            (g.dim == 2 && jj + dj >= P))
          continue;
        c[g.index(ii, jj)] = (u.at(ii + di, jj + dj) - u.at(ii - di, jj - dj)) * inv2h;
      }
    d.comps.push_back(c);
  }
  return d;
}

struct OrderSplit {
  int k;
  double sigma;
};

OrderSplit split_order(double order) {
  if (!(order > 0.0)) throw ConfigError("order must be positive");
  if (order > 2.0 + 1e-12)
    throw ConfigError("orders above 2 exceed the second-order discretization");
  int k = static_cast<int>(std::ceil(order)) - 1;
  double sigma = order - k;
  return {k, sigma};
}

std::vector<std::size_t> region_points(const GridDomain& g, const Region& r) {
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec2 p = g.point(i);
    if (p[0] < r.lo[0] - 1e-12 || p[0] > r.hi[0] + 1e-12) continue;
    if (g.dim == 2 && (p[1] < r.lo[1] - 1e-12 || p[1] > r.hi[1] + 1e-12))
      continue;
    pts.push_back(i);
  }
  return pts;
}

void check_region(const GridDomain& g, const Region& r, double scale,
                  const std::vector<std::size_t>& pts) {
  if (pts.empty()) throw ConfigError("region contains no grid points");
  double span = r.hi[0] - r.lo[0];
  if (g.dim == 2) span = std::min(span, r.hi[1] - r.lo[1]);
  if (span < scale) throw ConfigError("region too small for scale");
  for (std::size_t i : pts)
    if (!g.in_omega(i))
      throw ConfigError("region leaves the Omega mask");
}

// max |D(x) - D(y)| and the matching Holder quotient over pairs at distance
// in [scale, 2 scale].
struct PairScan {
  double osc = 0.0;
  double quotient = 0.0;
};

PairScan scan_pairs(const GridDomain& g,
                    const std::vector<std::vector<double>>& comps,
                    const std::vector<std::size_t>& pts, double scale,
                    double sigma, std::uint64_t seed) {
  PairScan out;
  if (g.dim == 1) {
    const int omin = std::max(1, static_cast<int>(std::ceil(scale / g.h)));
    const int omax = static_cast<int>(std::floor(2.0 * scale / g.h));
    std::vector<char> inset(g.size(), 0);
    for (std::size_t i : pts) inset[i] = 1;
    for (int off = omin; off <= omax; ++off) {
      const double dist = off * g.h;
      const double dpow = std::pow(dist, sigma);
      for (std::size_t i : pts) {
        const std::size_t j = i + off;
        if (j >= g.size() || !inset[j]) continue;
        for (const auto& c : comps) {
          const double dv = std::abs(c[j] - c[i]);
          out.osc = std::max(out.osc, dv);
          out.quotient = std::max(out.quotient, dv / dpow);
        }
      }
    }
  } else {
    std::vector<char> inset(g.size(), 0);
    for (std::size_t i : pts) inset[i] = 1;
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> rad(scale, 2.0 * scale);
    const int P = g.points;
    const int samples = 100000;
    for (int t = 0; t < samples; ++t) {
      const std::size_t i = pts[pick(rng)];
      const Vec2 p = g.point(i);
      const double phi = ang(rng), r = rad(rng);
      const double qx = p[0] + r * std::cos(phi);
      const double qy = p[1] + r * std::sin(phi);
      const int qi = static_cast<int>(std::lround((qx + g.halfwidth) / g.h));
      const int qj = static_cast<int>(std::lround((qy + g.halfwidth) / g.h));
      if (qi < 0 || qi >= P || qj < 0 || qj >= P) continue;
      const std::size_t j = g.index(qi, qj);
      if (!inset[j]) continue;
      const Vec2 q = g.point(j);
      const double dist = std::hypot(q[0] - p[0], q[1] - p[1]);
      if (dist < scale || dist > 2.0 * scale) continue;
      const double dpow = std::pow(dist, sigma);
      for (const auto& c : comps) {
        const double dv = std::abs(c[j] - c[i]);
        out.osc = std::max(out.osc, dv);
        out.quotient = std::max(out.quotient, dv / dpow);
      }
    }
  }
  return out;
}

std::vector<double> dyadic_scales(const GridDomain& g, const Region& r) {
  double span = r.hi[0] - r.lo[0];
  if (g.dim == 2) span = std::min(span, r.hi[1] - r.lo[1]);
  std::vector<double> scales;
  for (double sc = 4.0 * g.h; 2.0 * sc <= span; sc *= 2.0) scales.push_back(sc);
  return scales;
}

}  // namespace

double holder_seminorm(const Field& u, double order, const Region& region,
                       double scale, std::uint64_t seed) {
  const auto& g = *u.grid;
  const auto [k, sigma] = split_order(order);
  const auto pts = region_points(g, region);
  check_region(g, region, scale, pts);
  const DerivativeSet d = derivatives(u, k);
  return scan_pairs(g, d.comps, pts, scale, sigma, seed).quotient;
}

std::vector<HolderReport> fit_exponent(const Field& u, const Region& region,
                                       const std::vector<double>& orders,
                                       std::uint64_t seed) {
  const auto& g = *u.grid;
  const auto pts = region_points(g, region);
  const auto scales = dyadic_scales(g, region);
  if (scales.size() < 4)
    throw ConfigError("need at least 4 dyadic scales in the region");
  check_region(g, region, scales.back(), pts);
  std::ostringstream rd;
  rd << "[" << region.lo[0] << "," << region.hi[0] << "]";
  if (g.dim == 2) rd << "x[" << region.lo[1] << "," << region.hi[1] << "]";

  std::vector<HolderReport> out;
  for (double order : orders) {
    const auto [k, sigma] = split_order(order);
    const DerivativeSet d = derivatives(u, k);
    HolderReport rep;
    rep.order = order;
    rep.scales = scales;
    rep.region_desc = rd.str();
    std::vector<double> lx, ly;
    for (double sc : scales) {
      const PairScan ps = scan_pairs(g, d.comps, pts, sc, sigma, seed);
      rep.seminorms.push_back(ps.quotient);
      if (ps.osc > 0.0) {
        lx.push_back(std::log(sc));
        ly.push_back(std::log(ps.osc));
      }
    }
    if (lx.size() >= 2) {
      const LinearFit f = fit_line(lx, ly);
      rep.fitted_exponent = k + f.slope;
      rep.fit_stderr = f.slope_stderr;
      rep.fit_residual = f.residual;
    }
    // Non-increase over the three finest scales, 10% jitter allowance.
    rep.bounded = rep.seminorms[0] <= 1.10 * rep.seminorms[2] &&
                  rep.seminorms[1] <= 1.10 * rep.seminorms[2];
    if (rep.seminorms[2] == 0.0)
      rep.bounded = rep.seminorms[0] == 0.0 && rep.seminorms[1] == 0.0;
    out.push_back(std::move(rep));
  }
  return out;
}

LinearFit recover_exponent(const Field& u, const Region& region,
                           std::uint64_t seed) {
  const auto& g = *u.grid;
  const auto pts = region_points(g, region);
  // Keep scales well below the region span: oscillations of rough fields
  // saturate at their total amplitude once the scale reaches the coarsest
  // generator wavelength, which flattens the fitted slope.
  double span = region.hi[0] - region.lo[0];
  if (g.dim == 2) span = std::min(span, region.hi[1] - region.lo[1]);
  std::vector<double> scales;
  for (double sc = 4.0 * g.h; sc <= span / 8.0; sc *= 2.0) scales.push_back(sc);
  if (scales.size() < 3)
    throw ConfigError("need at least 3 dyadic scales in the region");
  std::vector<double> lx, ly;
  for (double sc : scales) {
    const PairScan ps =
        scan_pairs(g, {u.values}, pts, sc, 1.0, seed);
    if (ps.osc > 0.0) {
      lx.push_back(std::log(sc));
      ly.push_back(std::log(ps.osc));
    }
  }
  if (lx.size() < 3) throw NumericError("degenerate data");
  return fit_line(lx, ly);
}

double boundary_exponent(const Field& u, const GridDomain& grid,
                         LinearFit* fit_out) {
  const double diam = grid.omega_diameter();
  const double dmin = 4.0 * grid.h, dmax = 0.1 * diam;
  if (!(dmin < dmax)) throw NumericError("fewer than 6 usable boundary points");
  double umax = 0.0;
  for (std::size_t k : grid.omega_indices())
    umax = std::max(umax, std::abs(u.values[k]));
  if (umax < 1e-13) throw NumericError("degenerate data");
  // Log-equispaced bin means keep the regression from being dominated by
  // the top half-decade, where grid points cluster in log d.
  const int nbins = 16;
  const double l0 = std::log(dmin), l1 = std::log(dmax);
  std::vector<double> sx(nbins, 0.0), sy(nbins, 0.0);
  std::vector<int> cnt(nbins, 0);
  for (std::size_t k : grid.omega_indices()) {
    const double d = grid.boundary_distance[k];
    if (d < dmin || d > dmax) continue;
    const double v = std::abs(u.values[k]);
    if (v < 1e-13 * umax) continue;
    int b = static_cast<int>((std::log(d) - l0) / (l1 - l0) * nbins);
    b = std::min(std::max(b, 0), nbins - 1);
    sx[b] += std::log(d);
    sy[b] += std::log(v);
    ++cnt[b];
  }
  std::vector<double> lx, ly;
  for (int b = 0; b < nbins; ++b)
    if (cnt[b]) {
      lx.push_back(sx[b] / cnt[b]);
      ly.push_back(sy[b] / cnt[b]);
    }
  if (lx.size() < 6)
    throw NumericError("fewer than 6 usable boundary points");
  const LinearFit f = fit_line(lx, ly);
  if (fit_out) *fit_out = f;
  return f.slope;
}

InteriorExperimentResult interior_experiment(
    const InteriorExperimentConfig& cfg) {
  InteriorExperimentResult res;
  auto grid = GridDomain::interval(cfg.box_halfwidth, cfg.points, -1.0, 1.0);

  MixedProblem p;
  p.grid = grid;
  p.op.s = cfg.s;
  p.op.measure = SpectralMeasure::atomic_1d(1.0, 1.0);
  p.a = make_coefficient(cfg.coef_kind, cfg.alpha, cfg.a_minus, cfg.a_plus,
                         grid, cfg.seed);
  p.f = Field(grid);
  if (cfg.f_kind == "smooth") {
    p.f = Field::from_function(
        grid, [](Vec2 x) { return std::exp(-4.0 * x[0] * x[0]); }, 0.0);
  } else if (cfg.f_kind == "weierstrass") {
    const double k0 = 2.0 * std::numbers::pi;
    const auto prof = weierstrass_profile(cfg.points, -cfg.box_halfwidth,
                                          grid->h, cfg.gamma, k0, cfg.seed + 5);
    for (int i = 0; i < cfg.points; ++i) p.f.values[i] = prof[i];
  } else {
    throw ConfigError("unknown f kind: " + cfg.f_kind);
  }

  res.solve = solve_direct(p);

  const bool case_a = cfg.s > 0.5 * (1.0 - cfg.alpha);
  res.case_label = case_a ? "a" : "b";
  const double total = 2.0 * cfg.s + cfg.alpha + cfg.gamma;
  if (case_a) {
    if (std::floor(total) > 2.0) res.flags.push_back("outside-theorem");
  } else {
    if (total < 1.0) res.flags.push_back("outside-theorem");
  }
  if (total > 2.0) res.flags.push_back("prediction-capped");
  res.threshold = std::min(total, 2.0);

  std::vector<double> orders;
  for (double o : {0.5, 1.0, 1.5, 2.0})
    if (o <= res.threshold + 1e-12) orders.push_back(o);
  Region inner{{-0.5, 0.0}, {0.5, 0.0}};
  res.reports = fit_exponent(res.solve.u, inner, orders, cfg.seed);
  return res;
}

}  // namespace stablemix
