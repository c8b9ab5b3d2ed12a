#include "stablemix/operator_spec.hpp"

#include <cmath>
#include <numbers>

namespace stablemix {

std::vector<std::string> OperatorSpec::validate() const {
  std::vector<std::string> out = stablemix::validate(measure);
  if (!(s > 0.0 && s < 1.0)) out.push_back("s must lie in (0,1)");
  if (inner_cut < 0.0) out.push_back("inner_cut must be positive (or 0 = auto)");
  if (tail_radius != 0.0 && inner_cut != 0.0 && tail_radius <= inner_cut)
    out.push_back("tail_radius must exceed inner_cut");
  if (radial_points_per_decade < 1)
    out.push_back("radial_points_per_decade must be positive");
  return out;
}

void OperatorSpec::validate_or_throw() const {
  const auto v = validate();
  if (!v.empty()) throw ConfigError("invalid operator spec: " + v.front());
}

double symbol(const OperatorSpec& spec, Vec2 xi) {
  const double p = 2.0 * spec.s;
  double acc = 0.0;
  for (const auto& n : spec.measure.directional_nodes()) {
    const double t = std::abs(xi[0] * n.dir[0] + xi[1] * n.dir[1]);
    if (t > 0.0) acc += n.weight * std::pow(t, p);
  }
  return acc;
}

double line_normalization(double s) {
  return 2.0 * std::sqrt(std::numbers::pi) * std::tgamma(1.0 - s) /
         (s * std::pow(4.0, s) * std::tgamma(0.5 + s));
}

}  // namespace stablemix
