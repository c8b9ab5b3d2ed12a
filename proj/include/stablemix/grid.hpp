#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace stablemix {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Vec2 = std::array<double, 2>;

// Uniform node-centered grid on [-halfwidth, halfwidth]^dim with a mask
// marking the Dirichlet region Omega and the distance-to-boundary field on it.
class GridDomain {
 public:
  int dim = 1;
  double halfwidth = 1.0;
  int points = 2;  // per axis
  double h = 2.0;
  std::vector<std::uint8_t> omega;
  std::vector<double> boundary_distance;  // > 0 exactly on omega

  static std::shared_ptr<const GridDomain> interval(double halfwidth,
                                                    int points, double a,
                                                    double b);
  static std::shared_ptr<const GridDomain> disk(double halfwidth, int points,
                                                Vec2 center, double radius);
  // Omega = open box (-halfwidth, halfwidth)^dim
  static std::shared_ptr<const GridDomain> box(int dim, double halfwidth,
                                               int points);

  std::size_t size() const {
    return dim == 1 ? static_cast<std::size_t>(points)
                    : static_cast<std::size_t>(points) * points;
  }
  double coord(int i) const { return -halfwidth + i * h; }
  std::size_t index(int i, int j = 0) const {
    return dim == 1 ? static_cast<std::size_t>(i)
                    : static_cast<std::size_t>(j) * points + i;
  }
  Vec2 point(std::size_t idx) const {
    if (dim == 1) return {coord(static_cast<int>(idx)), 0.0};
    const int j = static_cast<int>(idx) / points;
    const int i = static_cast<int>(idx) % points;
    return {coord(i), coord(j)};
  }
  bool in_omega(std::size_t idx) const { return omega[idx] != 0; }
  std::vector<std::size_t> omega_indices() const;
  double omega_diameter() const;

 private:
  GridDomain(int dim_, double hw, int pts);
};

// Grid-sampled scalar function. Off-grid evaluation is multilinear inside the
// box hull and exterior_value outside it.
class Field {
 public:
  std::shared_ptr<const GridDomain> grid;
  std::vector<double> values;
  double exterior_value = 0.0;

  Field() = default;
  explicit Field(std::shared_ptr<const GridDomain> g, double init = 0.0)
      : grid(std::move(g)), values(grid->size(), init) {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  double at(int i, int j = 0) const { return values[grid->index(i, j)]; }
  double& at(int i, int j = 0) { return values[grid->index(i, j)]; }

  double sample(double x) const;
  double sample(double x, double y) const;
  double sample(Vec2 p) const {
    return grid->dim == 1 ? sample(p[0]) : sample(p[0], p[1]);
  }

  double max_abs() const;
  // max - min over Omega-masked points
  double oscillation() const;

  static Field from_function(std::shared_ptr<const GridDomain> g,
                             const std::function<double(Vec2)>& fn,
                             double exterior = 0.0);
};

void write_field_csv(const Field& f, const std::string& path);

}  // namespace stablemix
