#include "stablemix/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "stablemix/coefficient.hpp"
#include "stablemix/util.hpp"

namespace stablemix {

namespace {

std::string trim(const std::string& v) {
  const auto b = v.find_first_not_of(" \t\r");
  const auto e = v.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (...) {
    throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                      "' is not a number");
  }
}

int to_int(const std::string& v, int line, const std::string& key) {
  const double d = to_double(v, line, key);
  if (d != std::floor(d))
    throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                      "' is not an integer");
  return static_cast<int>(d);
}

bool to_switch(const std::string& v, int line, const std::string& key) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                    "' must be on|off");
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& base_dir) {
  RunConfig cfg;
  std::vector<std::pair<std::string, double>> atoms;  // (angle/sign, weight)
  std::string measure_kind, density_name;
  double measure_scale = 1.0;
  int measure_samples = 256;

  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(ln) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "dimension") {
      cfg.dimension = to_int(val, ln, key);
      if (cfg.dimension != 1 && cfg.dimension != 2)
        throw ConfigError("line " + std::to_string(ln) +
                          ": dimension must be 1 or 2");
    } else if (key == "box.halfwidth") {
      cfg.box_halfwidth = to_double(val, ln, key);
      if (!(cfg.box_halfwidth > 0))
        throw ConfigError("line " + std::to_string(ln) +
                          ": box.halfwidth must be positive");
    } else if (key == "grid.points") {
      cfg.grid_points = to_int(val, ln, key);
      if (cfg.grid_points < 9)
        throw ConfigError("line " + std::to_string(ln) +
                          ": grid.points must be at least 9");
    } else if (key == "omega.kind") {
      if (val != "interval" && val != "disk" && val != "box")
        throw ConfigError("line " + std::to_string(ln) +
                          ": omega.kind must be interval|disk|box");
      cfg.omega_kind = val;
    } else if (key == "omega.a") {
      cfg.omega_a = to_double(val, ln, key);
    } else if (key == "omega.b") {
      cfg.omega_b = to_double(val, ln, key);
    } else if (key == "omega.center_x") {
      cfg.omega_cx = to_double(val, ln, key);
    } else if (key == "omega.center_y") {
      cfg.omega_cy = to_double(val, ln, key);
    } else if (key == "omega.radius") {
      cfg.omega_radius = to_double(val, ln, key);
    } else if (key == "operator.s") {
      cfg.s = to_double(val, ln, key);
      if (!(cfg.s > 0.0 && cfg.s < 1.0))
        throw ConfigError("line " + std::to_string(ln) +
                          ": s must lie in (0,1)");
    } else if (key == "operator.inner_cut_cells") {
      cfg.inner_cut_cells = to_int(val, ln, key);
      if (cfg.inner_cut_cells < 1)
        throw ConfigError("line " + std::to_string(ln) +
                          ": inner_cut_cells must be >= 1");
    } else if (key == "operator.tail_radius") {
      cfg.tail_radius = to_double(val, ln, key);
      if (cfg.tail_radius < 0)
        throw ConfigError("line " + std::to_string(ln) +
                          ": tail_radius must be nonnegative (0 = auto)");
    } else if (key == "operator.radial_points_per_decade") {
      cfg.radial_points_per_decade = to_int(val, ln, key);
      if (cfg.radial_points_per_decade < 1)
        throw ConfigError("line " + std::to_string(ln) +
                          ": radial_points_per_decade must be positive");
    } else if (key == "measure.kind") {
      if (val != "atomic" && val != "uniform" && val != "density")
        throw ConfigError("line " + std::to_string(ln) +
                          ": measure.kind must be atomic|density|uniform");
      measure_kind = val;
    } else if (key == "measure.atom") {
      const auto comma = val.find(',');
      if (comma == std::string::npos)
        throw ConfigError("line " + std::to_string(ln) +
                          ": measure.atom needs '<angle|sign>, <weight>'");
      atoms.emplace_back(trim(val.substr(0, comma)),
                         to_double(trim(val.substr(comma + 1)), ln, key));
    } else if (key == "measure.density") {
      density_name = val;
    } else if (key == "measure.scale") {
      measure_scale = to_double(val, ln, key);
    } else if (key == "measure.samples") {
      measure_samples = to_int(val, ln, key);
    } else if (key == "measure.file") {
      cfg.measure_file = base_dir.empty() ? val : base_dir + "/" + val;
    } else if (key == "coef.kind") {
      cfg.coef_kind = val;
    } else if (key == "coef.alpha") {
      cfg.coef_alpha = to_double(val, ln, key);
      if (!(cfg.coef_alpha > 0.0 && cfg.coef_alpha < 1.0))
        throw ConfigError("line " + std::to_string(ln) +
                          ": alpha must lie in (0,1)");
    } else if (key == "coef.min") {
      cfg.coef_min = to_double(val, ln, key);
      if (!(cfg.coef_min > 0))
        throw ConfigError("line " + std::to_string(ln) +
                          ": coef.min must be positive");
    } else if (key == "coef.max") {
      cfg.coef_max = to_double(val, ln, key);
    } else if (key == "problem") {
      cfg.problem = val;
    } else if (key == "problem.local") {
      cfg.local_on = to_switch(val, ln, key);
    } else if (key == "problem.nonlocal") {
      cfg.nonlocal_on = to_switch(val, ln, key);
    } else if (key == "lambda") {
      cfg.lambda = to_double(val, ln, key);
      if (cfg.lambda < 0)
        throw ConfigError("line " + std::to_string(ln) +
                          ": lambda must be nonnegative");
    } else if (key == "tol") {
      cfg.tol = to_double(val, ln, key);
      if (!(cfg.tol > 0))
        throw ConfigError("line " + std::to_string(ln) +
                          ": tol must be positive");
    } else if (key == "max_iter") {
      cfg.max_iter = to_int(val, ln, key);
    } else if (key == "trials") {
      cfg.trials = to_int(val, ln, key);
    } else if (key == "t") {
      cfg.t_time = to_double(val, ln, key);
      if (!(cfg.t_time > 0))
        throw ConfigError("line " + std::to_string(ln) + ": t must be positive");
    } else if (key == "delta_frac") {
      cfg.delta_frac = to_double(val, ln, key);
      if (!(cfg.delta_frac > 0 && cfg.delta_frac < 1))
        throw ConfigError("line " + std::to_string(ln) +
                          ": delta_frac must lie in (0,1)");
    } else if (key == "f.kind") {
      if (val != "smooth" && val != "weierstrass" && val != "one")
        throw ConfigError("line " + std::to_string(ln) +
                          ": f.kind must be smooth|weierstrass|one");
      cfg.f_kind = val;
    } else if (key == "f.gamma") {
      cfg.f_gamma = to_double(val, ln, key);
      if (!(cfg.f_gamma > 0 && cfg.f_gamma < 1))
        throw ConfigError("line " + std::to_string(ln) +
                          ": f.gamma must lie in (0,1)");
    } else if (key == "apply.field") {
      if (val != "gaussian" && val != "constant" && val != "affine")
        throw ConfigError("line " + std::to_string(ln) +
                          ": apply.field must be gaussian|constant|affine");
      cfg.apply_field = val;
    } else if (key == "fft.pad_factor") {
      cfg.pad_factor = to_int(val, ln, key);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_double(val, ln, key));
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "threads") {
      cfg.threads = to_int(val, ln, key);
      if (cfg.threads < 1)
        throw ConfigError("line " + std::to_string(ln) +
                          ": threads must be >= 1");
    } else if (key == "method") {
      if (val != "direct" && val != "picard")
        throw ConfigError("line " + std::to_string(ln) +
                          ": method must be direct|picard");
      cfg.method = val;
    } else if (key == "gnuplot") {
      cfg.gnuplot = to_switch(val, ln, key);
    } else {
      throw ConfigError("line " + std::to_string(ln) + ": unknown key '" +
                        key + "'");
    }
  }

  if (cfg.omega_kind.empty())
    cfg.omega_kind = cfg.dimension == 1 ? "interval" : "disk";
  if (cfg.coef_max < cfg.coef_min)
    throw ConfigError("coef.max must be >= coef.min");

  // Assemble the measure.
  if (!cfg.measure_file.empty()) {
    cfg.measure = load_measure_file(cfg.measure_file, cfg.dimension);
    cfg.measure_set = true;
    cfg.measure_desc = "file:" + cfg.measure_file;
  } else if (!measure_kind.empty()) {
    std::ostringstream ms;
    ms << "kind = " << measure_kind << "\n";
    for (const auto& [first, w] : atoms)
      ms << "atom = " << first << ", " << format_double(w) << "\n";
    if (!density_name.empty()) ms << "density = " << density_name << "\n";
    ms << "scale = " << format_double(measure_scale) << "\n";
    ms << "samples = " << measure_samples << "\n";
    cfg.measure = parse_measure_text(ms.str(), cfg.dimension);
    cfg.measure_set = true;
    cfg.measure_desc = measure_kind +
                       (density_name.empty() ? "" : ":" + density_name);
  }
  if (!cfg.measure_set && cfg.nonlocal_on) throw ConfigError("measure required");
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string dir;
  const auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_config_text(buf.str(), dir);
}

std::shared_ptr<const GridDomain> RunConfig::make_grid() const {
  if (omega_kind == "interval") {
    if (dimension != 1) throw ConfigError("interval Omega requires dimension 1");
    return GridDomain::interval(box_halfwidth, grid_points, omega_a, omega_b);
  }
  if (omega_kind == "disk") {
    if (dimension != 2) throw ConfigError("disk Omega requires dimension 2");
    return GridDomain::disk(box_halfwidth, grid_points, {omega_cx, omega_cy},
                            omega_radius);
  }
  return GridDomain::box(dimension, box_halfwidth, grid_points);
}

OperatorSpec RunConfig::make_operator() const {
  if (!measure_set) throw ConfigError("measure required");
  OperatorSpec spec;
  spec.s = s;
  spec.measure = measure;
  const double h = 2.0 * box_halfwidth / (grid_points - 1);
  spec.inner_cut = inner_cut_cells * h;
  spec.tail_radius = tail_radius;
  spec.radial_points_per_decade = radial_points_per_decade;
  return spec;
}

MixedProblem RunConfig::make_problem() const {
  MixedProblem p;
  p.grid = make_grid();
  if (nonlocal_on) p.op = make_operator();
  else p.op.measure = SpectralMeasure::uniform(dimension, 0.0);
  p.include_nonlocal = nonlocal_on;
  p.include_local = local_on;
  p.a = make_coefficient(coef_kind, coef_alpha, coef_min, coef_max, p.grid,
                         seed);
  p.lambda_shift = lambda;
  p.f = Field(p.grid);
  if (f_kind == "one") {
    for (std::size_t k : p.grid->omega_indices()) p.f.values[k] = 1.0;
  } else if (f_kind == "smooth") {
    const double w = 0.25 * p.grid->omega_diameter();
    p.f = Field::from_function(
        p.grid,
        [&](Vec2 x) {
          const double cx = omega_kind == "interval" ? 0.5 * (omega_a + omega_b)
                                                     : omega_cx;
          const double cy = omega_kind == "disk" ? omega_cy : 0.0;
          const double dx = x[0] - cx, dy = x[1] - cy;
          return std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
        },
        0.0);
  } else if (f_kind == "weierstrass") {
    const double k0 = 2.0 * std::numbers::pi / box_halfwidth;
    const auto prof = weierstrass_profile(
        grid_points, -box_halfwidth, p.grid->h, f_gamma, k0, seed + 5);
    for (int j = 0; j < (dimension == 2 ? grid_points : 1); ++j)
      for (int i = 0; i < grid_points; ++i)
        p.f.values[p.grid->index(i, j)] = prof[i];
  }
  return p;
}

std::string canonical_config(const RunConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["dimension"] = std::to_string(cfg.dimension);
  kv["box.halfwidth"] = format_double(cfg.box_halfwidth);
  kv["grid.points"] = std::to_string(cfg.grid_points);
  kv["omega.kind"] = cfg.omega_kind;
  if (cfg.omega_kind == "interval") {
    kv["omega.a"] = format_double(cfg.omega_a);
    kv["omega.b"] = format_double(cfg.omega_b);
  } else if (cfg.omega_kind == "disk") {
    kv["omega.center_x"] = format_double(cfg.omega_cx);
    kv["omega.center_y"] = format_double(cfg.omega_cy);
    kv["omega.radius"] = format_double(cfg.omega_radius);
  }
  kv["operator.s"] = format_double(cfg.s);
  kv["operator.inner_cut_cells"] = std::to_string(cfg.inner_cut_cells);
  kv["operator.tail_radius"] = format_double(cfg.tail_radius);
  kv["operator.radial_points_per_decade"] =
      std::to_string(cfg.radial_points_per_decade);
  kv["measure"] = cfg.measure_desc;
  kv["measure.total_mass"] =
      cfg.measure_set ? format_double(cfg.measure.total_mass) : "0";
  kv["coef.kind"] = cfg.coef_kind;
  kv["coef.alpha"] = format_double(cfg.coef_alpha);
  kv["coef.min"] = format_double(cfg.coef_min);
  kv["coef.max"] = format_double(cfg.coef_max);
  kv["problem"] = cfg.problem;
  kv["problem.local"] = cfg.local_on ? "on" : "off";
  kv["problem.nonlocal"] = cfg.nonlocal_on ? "on" : "off";
  kv["lambda"] = format_double(cfg.lambda);
  kv["tol"] = format_double(cfg.tol);
  kv["max_iter"] = std::to_string(cfg.max_iter);
  kv["trials"] = std::to_string(cfg.trials);
  kv["t"] = format_double(cfg.t_time);
  kv["delta_frac"] = format_double(cfg.delta_frac);
  kv["f.kind"] = cfg.f_kind;
  kv["f.gamma"] = format_double(cfg.f_gamma);
  kv["apply.field"] = cfg.apply_field;
  kv["fft.pad_factor"] = std::to_string(cfg.pad_factor);
  kv["seed"] = std::to_string(cfg.seed);
  kv["threads"] = std::to_string(cfg.threads);
  kv["method"] = cfg.method;
  kv["gnuplot"] = cfg.gnuplot ? "on" : "off";
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
  return os.str();
}

}  // namespace stablemix
