#include "stablemix/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stablemix {

std::vector<std::string> CoefficientField::validate() const {
  std::vector<std::string> out;
  if (!(a_minus > 0.0)) out.push_back("a_minus must be positive");
  if (!(a_minus <= a_plus)) out.push_back("a_minus must not exceed a_plus");
  if (!(alpha > 0.0 && alpha < 1.0)) out.push_back("alpha must lie in (0,1)");
  for (double v : samples.values) {
    if (v < a_minus - 1e-12 || v > a_plus + 1e-12) {
      out.push_back("samples leave [a_minus, a_plus]");
      break;
    }
  }
  return out;
}

bool CoefficientField::is_constant_one() const {
  for (double v : samples.values)
    if (v != 1.0) return false;
  return true;
}

std::vector<double> weierstrass_profile(int n_points, double x0, double h,
                                        double alpha, double k0,
                                        std::uint64_t seed) {
  const double nyquist = std::numbers::pi / h;
  Rng rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> freqs, phases, amps;
  for (double k = k0; k <= nyquist; k *= 2.0) {
    freqs.push_back(k);
    phases.push_back(phase(rng));
    amps.push_back(std::pow(k / k0, -alpha));
  }
  std::vector<double> out(n_points, 0.0);
  for (int i = 0; i < n_points; ++i) {
    const double x = x0 + i * h;
    double v = 0.0;
    for (std::size_t j = 0; j < freqs.size(); ++j)
      v += amps[j] * std::cos(freqs[j] * x + phases[j]);
    out[i] = v;
  }
  return out;
}

CoefficientField make_coefficient(const std::string& kind, double alpha,
                                  double a_minus, double a_plus,
                                  std::shared_ptr<const GridDomain> grid,
                                  std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
  if (!(a_minus > 0.0 && a_minus <= a_plus))
    throw ConfigError("coefficient bounds must satisfy 0 < a_minus <= a_plus");
  CoefficientField cf;
  cf.alpha = alpha;
  cf.a_minus = a_minus;
  cf.a_plus = a_plus;
  cf.generator_tag = kind;
  const auto& g = *grid;
  if (kind == "constant") {
    if (a_minus != a_plus)
      throw ConfigError("constant coefficient requires a_minus == a_plus");
    cf.samples = Field(grid, a_minus);
    cf.samples.exterior_value = a_minus;
    return cf;
  }
  if (kind == "smooth-sine") {
    const double mid = 0.5 * (a_minus + a_plus);
    const double amp = 0.5 * (a_plus - a_minus);
    const double k = std::numbers::pi / g.halfwidth;
    cf.samples = Field::from_function(
        grid,
        [&](Vec2 p) {
          const double v = g.dim == 1
                               ? std::sin(k * p[0])
                               : 0.5 * (std::sin(k * p[0]) + std::sin(k * p[1] + 0.7));
          return mid + amp * v;
        },
        mid);
    cf.samples.exterior_value = mid;
    return cf;
  }
  if (kind == "weierstrass-alpha") {
    const double k0 = 2.0 * std::numbers::pi / g.halfwidth;
    const auto px =
        weierstrass_profile(g.points, -g.halfwidth, g.h, alpha, k0, seed);
    std::vector<double> raw(g.size());
    if (g.dim == 1) {
      raw = px;
    } else {
      const auto py =
          weierstrass_profile(g.points, -g.halfwidth, g.h, alpha, k0, seed + 1);
      for (int j = 0; j < g.points; ++j)
        for (int i = 0; i < g.points; ++i)
          raw[g.index(i, j)] = 0.5 * (px[i] + py[j]);
    }
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const double span = (*hi > *lo) ? *hi - *lo : 1.0;
    cf.samples = Field(grid);
    for (std::size_t i = 0; i < raw.size(); ++i)
      cf.samples.values[i] =
          a_minus + (a_plus - a_minus) * (raw[i] - *lo) / span;
    cf.samples.exterior_value = 0.5 * (a_minus + a_plus);
    return cf;
  }
  throw ConfigError("unknown coefficient kind: " + kind);
}

double apply_div_a_grad(const CoefficientField& a, const Field& u,
                        std::size_t at) {
  const auto& g = *u.grid;
  const int P = g.points;
  const int i0 = static_cast<int>(at) % P;
  const int j0 = g.dim == 2 ? static_cast<int>(at) / P : 0;
  const double inv_h2 = 1.0 / (g.h * g.h);
  const double uc = u.values[at];
  const double ac = a.samples.values[at];
  auto aval = [&](int i, int j) {
    if (i < 0 || i >= P || (g.dim == 2 && (j < 0 || j >= P)))
      return a.samples.exterior_value;
    return a.samples.values[g.index(i, j)];
  };
  auto uval = [&](int i, int j) {
    if (i < 0 || i >= P || (g.dim == 2 && (j < 0 || j >= P)))
      return u.exterior_value;
    return u.values[g.index(i, j)];
  };
  double acc = 0.0;
  const int di[2] = {1, 0}, dj[2] = {0, 1};
  for (int ax = 0; ax < g.dim; ++ax) {
    const double a_p = 0.5 * (ac + aval(i0 + di[ax], j0 + dj[ax]));
    const double a_m = 0.5 * (ac + aval(i0 - di[ax], j0 - dj[ax]));
    acc += a_p * (uval(i0 + di[ax], j0 + dj[ax]) - uc) +
           a_m * (uval(i0 - di[ax], j0 - dj[ax]) - uc);
  }
  return acc * inv_h2;
}

}  // namespace stablemix
