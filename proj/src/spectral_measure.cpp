#include "stablemix/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace stablemix {

namespace {
constexpr double kUnitTol = 1e-12;

double norm2(Vec2 v) { return std::sqrt(v[0] * v[0] + v[1] * v[1]); }

Vec2 angle_dir(double phi) { return {std::cos(phi), std::sin(phi)}; }
}  // namespace

SpectralMeasure SpectralMeasure::atomic_1d(double w_plus, double w_minus) {
  SpectralMeasure m;
  m.dim = 1;
  m.atoms = {{{1.0, 0.0}, w_plus}, {{-1.0, 0.0}, w_minus}};
  m.refresh_mass();
  return m;
}

SpectralMeasure SpectralMeasure::axis_2d(double w) {
  SpectralMeasure m;
  m.dim = 2;
  m.atoms = {{{1.0, 0.0}, w}, {{-1.0, 0.0}, w}, {{0.0, 1.0}, w}, {{0.0, -1.0}, w}};
  m.refresh_mass();
  return m;
}

SpectralMeasure SpectralMeasure::uniform(int dim, double c, int samples) {
  SpectralMeasure m;
  m.dim = dim;
  if (dim == 1) {
    m.atoms = {{{1.0, 0.0}, c}, {{-1.0, 0.0}, c}};
  } else {
    m.density.assign(samples, c);
  }
  m.refresh_mass();
  return m;
}

SpectralMeasure SpectralMeasure::density_2d(std::vector<double> samples) {
  SpectralMeasure m;
  m.dim = 2;
  m.density = std::move(samples);
  m.refresh_mass();
  return m;
}

double SpectralMeasure::density_quadrature() const {
  if (density.empty()) return 0.0;
  if (dim == 1) return density[0] + density[1];
  const double w = 2.0 * std::numbers::pi / density.size();
  double s = 0.0;
  for (double d : density) s += d;
  return w * s;
}

void SpectralMeasure::refresh_mass() {
  double s = density_quadrature();
  for (const auto& a : atoms) s += a.weight;
  total_mass = s;
}

std::vector<SpectralMeasure::Node> SpectralMeasure::directional_nodes() const {
  std::vector<Node> nodes;
  nodes.reserve(atoms.size() + density.size());
  for (const auto& a : atoms) {
    if (a.weight != 0.0) nodes.push_back({a.dir, a.weight});
  }
  if (!density.empty()) {
    if (dim == 1) {
      if (density[0] != 0.0) nodes.push_back({{1.0, 0.0}, density[0]});
      if (density[1] != 0.0) nodes.push_back({{-1.0, 0.0}, density[1]});
    } else {
      const double w = 2.0 * std::numbers::pi / density.size();
      for (std::size_t k = 0; k < density.size(); ++k) {
        if (density[k] == 0.0) continue;
        const double phi = 2.0 * std::numbers::pi * k / density.size();
        nodes.push_back({angle_dir(phi), w * density[k]});
      }
    }
  }
  return nodes;
}

std::vector<std::string> validate(const SpectralMeasure& m) {
  std::vector<std::string> out;
  if (m.dim != 1 && m.dim != 2) {
    out.push_back("dimension must be 1 or 2");
    return out;
  }
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    const auto& a = m.atoms[i];
    if (std::abs(norm2(a.dir) - 1.0) > kUnitTol) {
      std::ostringstream os;
      os << "atom " << i << ": direction not unit norm";
      out.push_back(os.str());
    }
    if (!(a.weight >= 0.0)) {
      std::ostringstream os;
      os << "atom " << i << ": negative weight";
      out.push_back(os.str());
    }
  }
  // Evenness: each atom needs its antipode with the same weight.
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    const auto& a = m.atoms[i];
    bool found = false;
    for (const auto& b : m.atoms) {
      if (std::abs(b.dir[0] + a.dir[0]) < 1e-9 &&
          std::abs(b.dir[1] + a.dir[1]) < 1e-9 &&
          std::abs(b.weight - a.weight) < 1e-12) {
        found = true;
        break;
      }
    }
    if (!found) {
      std::ostringstream os;
      os << "atom " << i << ": measure not even (antipode missing)";
      out.push_back(os.str());
    }
  }
  if (!m.density.empty()) {
    if (m.dim == 1 && m.density.size() != 2)
      out.push_back("1D density must have exactly the pair {+1,-1}");
    if (m.dim == 2 && m.density.size() % 2 != 0)
      out.push_back("2D density sample count must be even for antipodal pairing");
    for (std::size_t k = 0; k < m.density.size(); ++k) {
      if (!(m.density[k] >= 0.0)) {
        std::ostringstream os;
        os << "density sample " << k << ": negative value";
        out.push_back(os.str());
      }
    }
    if (m.dim == 2 && m.density.size() % 2 == 0) {
      const std::size_t M = m.density.size();
      for (std::size_t k = 0; k < M / 2; ++k) {
        if (std::abs(m.density[k] - m.density[k + M / 2]) > 1e-12) {
          std::ostringstream os;
          os << "density sample " << k << ": measure not even at antipode";
          out.push_back(os.str());
          break;
        }
      }
    }
  }
  double mass = m.density_quadrature();
  for (const auto& a : m.atoms) mass += a.weight;
  if (!std::isfinite(mass)) out.push_back("total mass not finite");
  if (std::abs(mass - m.total_mass) > 1e-12 * std::max(1.0, mass))
    out.push_back("cached total_mass inconsistent with contents");
  if (!(mass > 0.0)) out.push_back("empty measure (total mass is zero)");
  return out;
}

EllipticityReport ellipticity(const SpectralMeasure& m, double s, int n_dirs) {
  if (m.total_mass <= 0.0) throw ConfigError("empty measure");
  if (n_dirs < 1) throw ConfigError("n_dirs must be positive");
  EllipticityReport rep;
  rep.total_mass = m.total_mass;
  const auto nodes = m.directional_nodes();
  auto scan = [&](auto&& integrand) {
    double best = std::numeric_limits<double>::max();
    if (m.dim == 1) {
      // S^0: nu = +-1 give the same directional integral.
      double v = 0.0;
      for (const auto& n : nodes) v += n.weight * integrand(n.dir[0]);
      best = v;
    } else {
      for (int k = 0; k < n_dirs; ++k) {
        const double phi = std::numbers::pi * k / n_dirs;  // evenness: half turn
        const Vec2 nu = angle_dir(phi);
        double v = 0.0;
        for (const auto& n : nodes)
          v += n.weight * integrand(nu[0] * n.dir[0] + nu[1] * n.dir[1]);
        best = std::min(best, v);
      }
    }
    return best;
  };
  rep.lambda1_est = scan([](double t) { return std::abs(t); });
  rep.lambda1_power2s_est =
      scan([s](double t) { return std::pow(std::abs(t), 2.0 * s); });
  rep.sampled_directions = (m.dim == 1) ? 1 : n_dirs;
  return rep;
}

namespace {

std::vector<double> density_catalog(const std::string& name, int samples,
                                    double scale) {
  std::vector<double> d(samples);
  if (name == "uniform") {
    std::fill(d.begin(), d.end(), scale);
  } else if (name == "cospower") {
    // 0.25 + cos^2(phi): even, strictly positive, anisotropic
    for (int k = 0; k < samples; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / samples;
      d[k] = scale * (0.25 + std::cos(phi) * std::cos(phi));
    }
  } else {
    throw ConfigError("unknown density catalog name: " + name);
  }
  return d;
}

}  // namespace

SpectralMeasure parse_measure_text(const std::string& text, int dim) {
  SpectralMeasure m;
  m.dim = dim;
  std::string kind;
  std::string density_name;
  double scale = 1.0;
  int samples = 256;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw ConfigError("measure spec line " + std::to_string(lineno) +
                        ": expected key = value");
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r");
      const auto e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "kind") {
      kind = val;
    } else if (key == "atom") {
      const auto comma = val.find(',');
      if (comma == std::string::npos)
        throw ConfigError("measure spec line " + std::to_string(lineno) +
                          ": atom needs two comma-separated values");
      const std::string first = trim(val.substr(0, comma));
      const double w = std::stod(trim(val.substr(comma + 1)));
      if (dim == 1) {
        const double sign = std::stod(first);
        m.atoms.push_back({{sign >= 0 ? 1.0 : -1.0, 0.0}, w});
      } else {
        const double phi = std::stod(first) * std::numbers::pi / 180.0;
        m.atoms.push_back({angle_dir(phi), w});
      }
    } else if (key == "density") {
      density_name = val;
    } else if (key == "scale") {
      scale = std::stod(val);
    } else if (key == "samples") {
      samples = std::stoi(val);
    } else {
      throw ConfigError("measure spec line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
  }
  if (kind.empty()) throw ConfigError("measure spec: kind required");
  if (kind == "uniform") {
    return SpectralMeasure::uniform(dim, scale, samples);
  } else if (kind == "atomic") {
    if (m.atoms.empty()) throw ConfigError("measure spec: atomic kind needs atom lines");
  } else if (kind == "density") {
    if (density_name.empty())
      throw ConfigError("measure spec: density kind needs a density name");
    if (dim == 1) {
      m.density = {scale, scale};
    } else {
      m.density = density_catalog(density_name, samples, scale);
    }
  } else {
    throw ConfigError("measure spec: kind must be atomic|density|uniform");
  }
  m.refresh_mass();
  return m;
}

SpectralMeasure load_measure_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open measure file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure_text(buf.str(), dim);
}

}  // namespace stablemix
