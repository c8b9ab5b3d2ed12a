#include "stablemix/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "stablemix/kernels.hpp"
#include "stablemix/util.hpp"

namespace stablemix {

GridDomain::GridDomain(int dim_, double hw, int pts)
    : dim(dim_), halfwidth(hw), points(pts) {
  if (dim != 1 && dim != 2) throw ConfigError("dimension must be 1 or 2");
  if (pts < 2) throw ConfigError("points_per_axis must be >= 2");
  if (hw <= 0) throw ConfigError("box_halfwidth must be positive");
  h = 2.0 * hw / (pts - 1);
  omega.assign(size(), 0);
  boundary_distance.assign(size(), 0.0);
}

std::shared_ptr<const GridDomain> GridDomain::interval(double hw, int pts,
                                                       double a, double b) {
  if (!(a < b) || a < -hw || b > hw)
    throw ConfigError("interval Omega must satisfy -halfwidth <= a < b <= halfwidth");
  auto g = std::shared_ptr<GridDomain>(new GridDomain(1, hw, pts));
  for (int i = 0; i < pts; ++i) {
    const double x = g->coord(i);
    if (x > a && x < b) {
      g->omega[i] = 1;
      g->boundary_distance[i] = std::min(x - a, b - x);
    }
  }
  return g;
}

std::shared_ptr<const GridDomain> GridDomain::disk(double hw, int pts,
                                                   Vec2 center, double radius) {
  if (radius <= 0) throw ConfigError("disk radius must be positive");
  auto g = std::shared_ptr<GridDomain>(new GridDomain(2, hw, pts));
  for (int j = 0; j < pts; ++j)
    for (int i = 0; i < pts; ++i) {
      const double dx = g->coord(i) - center[0];
      const double dy = g->coord(j) - center[1];
      const double r = std::sqrt(dx * dx + dy * dy);
      if (r < radius) {
        const std::size_t k = g->index(i, j);
        g->omega[k] = 1;
        g->boundary_distance[k] = radius - r;
      }
    }
  return g;
}

std::shared_ptr<const GridDomain> GridDomain::box(int dim_, double hw, int pts) {
  auto g = std::shared_ptr<GridDomain>(new GridDomain(dim_, hw, pts));
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec2 p = g->point(k);
    double d = std::numeric_limits<double>::max();
    for (int ax = 0; ax < dim_; ++ax) d = std::min(d, hw - std::abs(p[ax]));
    if (d > 0) {
      g->omega[k] = 1;
      g->boundary_distance[k] = d;
    }
  }
  return g;
}

std::vector<std::size_t> GridDomain::omega_indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < size(); ++k)
    if (omega[k]) idx.push_back(k);
  return idx;
}

double GridDomain::omega_diameter() const {
  double lo[2] = {halfwidth, halfwidth}, hi[2] = {-halfwidth, -halfwidth};
  for (std::size_t k = 0; k < size(); ++k) {
    if (!omega[k]) continue;
    const Vec2 p = point(k);
    for (int ax = 0; ax < dim; ++ax) {
      lo[ax] = std::min(lo[ax], p[ax]);
      hi[ax] = std::max(hi[ax], p[ax]);
    }
  }
  double d2 = 0;
  for (int ax = 0; ax < dim; ++ax) d2 += (hi[ax] - lo[ax]) * (hi[ax] - lo[ax]);
  return std::sqrt(d2);
}

double Field::sample(double x) const {
  const auto& g = *grid;
  const double hw = g.halfwidth;
  if (x < -hw || x > hw) return exterior_value;
  double t = (x + hw) / g.h;
  int i0 = static_cast<int>(std::floor(t));
  if (i0 >= g.points - 1) i0 = g.points - 2;
  const double f = t - i0;
  return (1.0 - f) * values[i0] + f * values[i0 + 1];
}

double Field::sample(double x, double y) const {
  const auto& g = *grid;
  const double hw = g.halfwidth;
  if (x < -hw || x > hw || y < -hw || y > hw) return exterior_value;
  double tx = (x + hw) / g.h, ty = (y + hw) / g.h;
  int i0 = static_cast<int>(std::floor(tx));
  int j0 = static_cast<int>(std::floor(ty));
  if (i0 >= g.points - 1) i0 = g.points - 2;
  if (j0 >= g.points - 1) j0 = g.points - 2;
  const double fx = tx - i0, fy = ty - j0;
  const double v00 = at(i0, j0), v10 = at(i0 + 1, j0);
  const double v01 = at(i0, j0 + 1), v11 = at(i0 + 1, j0 + 1);
  return (1 - fy) * ((1 - fx) * v00 + fx * v10) +
         fy * ((1 - fx) * v01 + fx * v11);
}

double Field::max_abs() const {
  return kernels::active_ops().max_abs(values.data(), values.size());
}

double Field::oscillation() const {
  double lo = std::numeric_limits<double>::max(), hi = -lo;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!grid->omega[k]) continue;
    lo = std::min(lo, values[k]);
    hi = std::max(hi, values[k]);
  }
  return hi > lo ? hi - lo : 0.0;
}

Field Field::from_function(std::shared_ptr<const GridDomain> g,
                           const std::function<double(Vec2)>& fn,
                           double exterior) {
  Field f(std::move(g));
  f.exterior_value = exterior;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    f.values[k] = fn(f.grid->point(k));
  return f;
}

void write_field_csv(const Field& f, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw ConfigError("cannot open output file: " + path);
  const auto& g = *f.grid;
  if (g.dim == 1) {
    std::fputs("x,value\n", fp);
    for (int i = 0; i < g.points; ++i)
      std::fprintf(fp, "%s,%s\n", format_double(g.coord(i)).c_str(),
                   format_double(f.values[i]).c_str());
  } else {
    std::fputs("x,y,value\n", fp);
    for (int j = 0; j < g.points; ++j)
      for (int i = 0; i < g.points; ++i)
        std::fprintf(fp, "%s,%s,%s\n", format_double(g.coord(i)).c_str(),
                     format_double(g.coord(j)).c_str(),
                     format_double(f.at(i, j)).c_str());
  }
  std::fclose(fp);
}

}  // namespace stablemix
