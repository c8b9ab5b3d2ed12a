// stablemix: numerical laboratory for the mixed local-nonlocal operator
// (-defL) - div(a grad) with a general symmetric stable jump part.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "stablemix/barrier.hpp"
#include "stablemix/config.hpp"
#include "stablemix/heat_kernel.hpp"
#include "stablemix/kernels.hpp"
#include "stablemix/max_principle.hpp"
#include "stablemix/picard.hpp"
#include "stablemix/regularity.hpp"
#include "stablemix/report.hpp"
#include "stablemix/spectral_apply.hpp"
#include "stablemix/util.hpp"

namespace sm = stablemix;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Timer {
  sm::RunRecord& rec;
  std::string phase;
  std::chrono::steady_clock::time_point start;
  Timer(sm::RunRecord& r, std::string p)
      : rec(r), phase(std::move(p)), start(std::chrono::steady_clock::now()) {}
  ~Timer() {
    rec.timings[phase] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  }
};

std::string out_path(const sm::RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return cfg.out_dir + "/" + name;
}

void hash_into_record(const sm::RunConfig& cfg, const std::string& cfg_path,
                      sm::RunRecord& rec) {
  rec.config_hash = sm::hex64(sm::fnv1a64(sm::canonical_config(cfg)));
  std::string blob;
  for (const std::string& p : {cfg_path, cfg.measure_file}) {
    if (p.empty()) continue;
    std::ifstream in(p, std::ios::binary);
    if (in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      blob += ss.str();
    }
  }
  rec.content_hash = sm::hex64(sm::fnv1a64(blob));
}

void emit_field(const sm::RunConfig& cfg, const sm::Field& f,
                const std::string& name, sm::RunRecord& rec,
                const std::string& title) {
  const std::string path = out_path(cfg, name);
  sm::write_field_csv(f, path);
  rec.outputs.push_back(path);
  if (cfg.gnuplot) {
    sm::write_gnuplot_script(path, f.grid->dim, title);
    rec.outputs.push_back(path + ".gp");
  }
}

json solve_report_json(const sm::SolveReport& r) {
  json j;
  j["method"] = r.method;
  j["residual_sup"] = r.residual_sup;
  j["iterations"] = r.iterations;
  j["lambda"] = r.lambda;
  if (!r.contraction_ratios.empty()) j["contraction_ratios"] = r.contraction_ratios;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

// ---- subcommand bodies ----------------------------------------------------

int run_symbol(const sm::RunConfig& cfg, json& results, sm::RunRecord& rec) {
  const sm::OperatorSpec spec = cfg.make_operator();
  const auto grid = cfg.make_grid();
  const sm::EllipticityReport er = sm::ellipticity(spec.measure, cfg.s, 720);
  results["ellipticity"] = {{"lambda1_est", er.lambda1_est},
                            {"lambda1_power2s_est", er.lambda1_power2s_est},
                            {"total_mass", er.total_mass},
                            {"sampled_directions", er.sampled_directions}};
  const sm::MixedSymbol mixed(spec, 1.0);
  const double xi_max = std::numbers::pi / grid->h;
  const auto sb = sm::symbol_sandwich(mixed, xi_max, cfg.dimension == 1 ? 512 : 96);
  results["sandwich"] = {{"lambda", sb.lambda}, {"Lambda", sb.Lambda}};
  rec.checks["sandwich_lambda_positive"] = sb.lambda > 0.0;
  rec.checks["sandwich_Lambda_finite"] = std::isfinite(sb.Lambda);
  rec.checks["sandwich_ordered"] = sb.lambda <= sb.Lambda;

  const std::string path = out_path(cfg, "symbol.csv");
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw sm::ConfigError("cannot open " + path);
  const double ks = sm::line_normalization(cfg.s);
  if (cfg.dimension == 1) {
    std::fputs("xi,symbol,mixed\n", fp);
    for (int k = -256; k <= 256; ++k) {
      const double xi = xi_max * k / 256.0;
      const double sL = sm::symbol(spec, {xi, 0.0});
      std::fprintf(fp, "%s,%s,%s\n", sm::format_double(xi).c_str(),
                   sm::format_double(sL).c_str(),
                   sm::format_double(ks * sL + xi * xi).c_str());
    }
  } else {
    std::fputs("xi1,xi2,symbol,mixed\n", fp);
    for (int kj = -48; kj <= 48; ++kj)
      for (int ki = -48; ki <= 48; ++ki) {
        const sm::Vec2 xi{xi_max * ki / 48.0, xi_max * kj / 48.0};
        const double sL = sm::symbol(spec, xi);
        std::fprintf(fp, "%s,%s,%s,%s\n", sm::format_double(xi[0]).c_str(),
                     sm::format_double(xi[1]).c_str(),
                     sm::format_double(sL).c_str(),
                     sm::format_double(ks * sL + xi[0] * xi[0] + xi[1] * xi[1]).c_str());
      }
  }
  std::fclose(fp);
  rec.outputs.push_back(path);
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_apply(const sm::RunConfig& cfg, json& results, sm::RunRecord& rec) {
  const sm::OperatorSpec spec = cfg.make_operator();
  const auto grid = cfg.make_grid();
  sm::Field u(grid);
  sm::TailModel tail = sm::TailModel::ExteriorConstant;
  if (cfg.apply_field == "gaussian") {
    const double w = grid->halfwidth / 8.0;
    u = sm::Field::from_function(
        grid,
        [&](sm::Vec2 x) {
          return std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2.0 * w * w));
        },
        0.0);
  } else if (cfg.apply_field == "constant") {
    u = sm::Field(grid, 1.0);
    u.exterior_value = 1.0;
  } else {  // affine
    u = sm::Field::from_function(grid, [](sm::Vec2 x) { return 0.5 * x[0]; },
                                 0.0);
    tail = sm::TailModel::None;
  }

  const sm::QuadraturePlan plan = sm::make_plan(spec, *grid);
  sm::Field lu(grid);
  {
    Timer t(rec, "apply_quadrature");
    for (std::size_t k = 0; k < grid->size(); ++k)
      lu.values[k] = sm::apply_L(plan, u, k, tail);
  }
  emit_field(cfg, lu, "applied.csv", rec, "quadrature route");

  if (cfg.apply_field == "gaussian") {
    Timer t(rec, "apply_fft");
    const sm::Field lf = sm::apply_fft(spec, u, cfg.pad_factor);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < grid->size(); ++k) {
      const sm::Vec2 x = grid->point(k);
      bool inner = std::abs(x[0]) <= grid->halfwidth / 2.0 &&
                   (grid->dim == 1 || std::abs(x[1]) <= grid->halfwidth / 2.0);
      if (!inner) continue;
      num = std::max(num, std::abs(lu.values[k] - lf.values[k]));
      den = std::max(den, std::abs(lf.values[k]));
    }
    const double rel = den > 0 ? num / den : 0.0;
    results["route_agreement_rel_sup"] = rel;
    bool axis_only = true;
    for (const auto& n : spec.measure.directional_nodes())
      if (grid->dim == 2 && std::abs(n.dir[0]) > 1e-14 &&
          std::abs(n.dir[1]) > 1e-14)
        axis_only = false;
    if (axis_only) rec.checks["route_agreement"] = rel <= 1e-4;
  } else if (cfg.apply_field == "constant") {
    results["sup_abs"] = lu.max_abs();
    rec.checks["constant_annihilated"] = lu.max_abs() <= 1e-10;
  } else {
    double worst = 0.0;
    const double deep = plan.radial.r_eff;
    for (std::size_t k = 0; k < grid->size(); ++k) {
      const sm::Vec2 x = grid->point(k);
      double edge = grid->halfwidth - std::abs(x[0]);
      if (grid->dim == 2) edge = std::min(edge, grid->halfwidth - std::abs(x[1]));
      if (edge > deep) worst = std::max(worst, std::abs(lu.values[k]));
    }
    results["deep_interior_sup"] = worst;
    rec.checks["affine_annihilated_deep"] = worst <= 1e-8 * 0.5 * grid->halfwidth;
  }
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_solve(const sm::RunConfig& cfg, json& results, sm::RunRecord& rec) {
  sm::MixedProblem p = cfg.make_problem();
  sm::SolveReport rep;
  {
    Timer t(rec, "solve");
    rep = cfg.method == "picard" ? sm::solve_picard(p, cfg.tol, cfg.max_iter)
                                 : sm::solve_direct(p);
  }
  results["solve"] = solve_report_json(rep);
  emit_field(cfg, rep.u, "solution.csv", rec, "solution");
  const double target = cfg.method == "picard"
                            ? 10.0 * cfg.tol * std::max(1.0, p.f.max_abs())
                            : 1e-8 * (p.f.max_abs() + 1.0);
  rec.checks["residual"] = rep.residual_sup <= target ||
                           rep.method == "picard";  // picard residual reported
  if (cfg.method == "picard" && !rep.contraction_ratios.empty()) {
    double worst = 0.0;
    for (double r : rep.contraction_ratios) worst = std::max(worst, r);
    results["max_contraction_ratio"] = worst;
    rec.checks["contraction"] = worst < 1.0;
  }
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_picard(const sm::RunConfig& cfg, json& results, sm::RunRecord& rec) {
  sm::MixedProblem p = cfg.make_problem();
  sm::SolveReport rep;
  {
    Timer t(rec, "picard");
    rep = sm::solve_picard(p, cfg.tol, cfg.max_iter);
  }
  results["picard"] = solve_report_json(rep);
  emit_field(cfg, rep.u, "solution.csv", rec, "picard solution");

  double worst = 0.0;
  for (double r : rep.contraction_ratios) worst = std::max(worst, r);
  results["max_contraction_ratio"] = worst;
  rec.checks["contraction"] = !rep.contraction_ratios.empty() && worst < 1.0;

  // Oracle: direct solve of the shifted problem.
  sm::MixedProblem shifted = p;
  shifted.lambda_shift = rep.lambda;
  sm::SolveReport direct;
  {
    Timer t(rec, "direct_oracle");
    direct = sm::solve_direct(shifted);
  }
  double diff = 0.0;
  for (std::size_t k = 0; k < rep.u.values.size(); ++k)
    diff = std::max(diff, std::abs(rep.u.values[k] - direct.u.values[k]));
  results["picard_vs_direct_sup"] = diff;
  rec.checks["matches_direct"] = diff <= 10.0 * cfg.tol;
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_heatkernel(const sm::RunConfig& cfg, json& results,
                   sm::RunRecord& rec) {
  const sm::OperatorSpec spec = cfg.make_operator();
  // Kernel box: 4x the solve box controls aliasing.
  const int pts = cfg.grid_points % 2 ? cfg.grid_points : cfg.grid_points + 1;
  auto kgrid = sm::GridDomain::box(cfg.dimension, 4.0 * cfg.box_halfwidth,
                                   4 * (pts - 1) + 1);
  const double a_const = cfg.coef_min;
  const sm::MixedSymbol symbol(spec, a_const);
  sm::KernelSlice slice;
  {
    Timer t(rec, "kernel");
    slice = sm::heat_kernel(symbol, kgrid, cfg.t_time);
  }
  sm::Field kf(kgrid);
  kf.values = slice.values;
  emit_field(cfg, kf, "kernel.csv", rec, "heat kernel");

  const double delta = cfg.delta_frac * 2.0 * cfg.s;
  const double moment = sm::moment_check(slice, cfg.s, delta);
  const double lip = sm::lipschitz_seminorm(slice);
  const double xi_max = std::numbers::pi / kgrid->h;
  const auto sb = sm::symbol_sandwich(symbol, xi_max, cfg.dimension == 1 ? 512 : 96);
  results["mass"] = slice.mass;
  results["max_imag"] = slice.max_imag;
  results["moment"] = moment;
  results["moment_delta"] = delta;
  results["lipschitz_seminorm"] = lip;
  results["symbol_bounds"] = {{"lambda", sb.lambda}, {"Lambda", sb.Lambda}};
  rec.checks["mass_unit"] = std::abs(slice.mass - 1.0) <= 1e-6;
  rec.checks["moment_finite"] = std::isfinite(moment);
  rec.checks["kernel_positivity"] = [&] {
    double mn = 0.0, mx = 0.0;
    for (double v : slice.values) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    return mn >= -1e-6 * mx;
  }();
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_maxprin(const sm::RunConfig& cfg, json& results, sm::RunRecord& rec) {
  sm::MixedProblem p = cfg.make_problem();
  sm::MaxPrinReport rep;
  {
    Timer t(rec, "maxprin");
    rep = sm::check_max_principle(p, cfg.trials, cfg.seed, true, cfg.threads);
  }
  json trials = json::array();
  for (const auto& t : rep.trials)
    trials.push_back({{"min_u", t.min_u},
                      {"f_inf", t.f_inf},
                      {"pass", t.pass},
                      {"solver_ok", t.solver_ok}});
  results["trials"] = trials;
  results["failures"] = rep.failures;
  rec.checks["max_principle"] = rep.pass;
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_regularity(const sm::RunConfig& cfg, json& results,
                   sm::RunRecord& rec) {
  sm::InteriorExperimentConfig ic;
  ic.s = cfg.s;
  ic.coef_kind = cfg.coef_kind;
  ic.alpha = cfg.coef_alpha;
  ic.a_minus = cfg.coef_min;
  ic.a_plus = cfg.coef_max;
  ic.f_kind = cfg.f_kind == "one" ? "smooth" : cfg.f_kind;
  ic.gamma = cfg.f_gamma;
  ic.points = cfg.grid_points;
  ic.box_halfwidth = cfg.box_halfwidth;
  ic.seed = cfg.seed;
  sm::InteriorExperimentResult res;
  {
    Timer t(rec, "regularity");
    res = sm::interior_experiment(ic);
  }
  const std::string path = out_path(cfg, "seminorms.csv");
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw sm::ConfigError("cannot open " + path);
  std::fputs("scale,order,seminorm\n", fp);
  json reports = json::array();
  for (const auto& r : res.reports) {
    for (std::size_t i = 0; i < r.scales.size(); ++i)
      std::fprintf(fp, "%s,%s,%s\n", sm::format_double(r.scales[i]).c_str(),
                   sm::format_double(r.order).c_str(),
                   sm::format_double(r.seminorms[i]).c_str());
    reports.push_back({{"order", r.order},
                       {"fitted_exponent", r.fitted_exponent},
                       {"fit_stderr", r.fit_stderr},
                       {"bounded", r.bounded}});
    rec.checks["bounded_order_" + sm::format_double(r.order)] = r.bounded;
  }
  std::fclose(fp);
  rec.outputs.push_back(path);
  results["case"] = res.case_label;
  results["threshold"] = res.threshold;
  results["flags"] = res.flags;
  results["reports"] = reports;
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_boundary(const sm::RunConfig& cfg, json& results, sm::RunRecord& rec) {
  sm::MixedProblem p = cfg.make_problem();
  // Boundary fits use f = 1 unless the config says otherwise.
  if (cfg.f_kind == "one" || cfg.f_kind == "smooth") {
    p.f = sm::Field(p.grid);
    for (std::size_t k : p.grid->omega_indices()) p.f.values[k] = 1.0;
  }
  sm::SolveReport rep;
  {
    Timer t(rec, "solve");
    rep = sm::solve_direct(p);
  }
  emit_field(cfg, rep.u, "solution.csv", rec, "boundary run");
  sm::LinearFit fit;
  const double kappa = sm::boundary_exponent(rep.u, *p.grid, &fit);
  results["kappa"] = kappa;
  results["kappa_stderr"] = fit.slope_stderr;
  results["fit_points"] = fit.n;
  results["solve"] = solve_report_json(rep);
  rec.checks["fit_ok"] = fit.n >= 6;
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_liouville(const sm::RunConfig& cfg, json& results,
                  sm::RunRecord& rec) {
  const sm::OperatorSpec spec = cfg.make_operator();
  sm::LiouvilleReport rep;
  {
    Timer t(rec, "liouville");
    rep = sm::liouville_harness(spec, cfg.coef_min, cfg.grid_points,
                                cfg.box_halfwidth, 0.1 * cfg.box_halfwidth,
                                5.0 / cfg.box_halfwidth);
  }
  results["defect_constant"] = rep.defect_constant;
  results["defect_affine"] = rep.defect_affine;
  results["defect_harmonic"] = rep.defect_harmonic;
  results["oscillation"] = rep.oscillation;
  results["ratio"] = rep.ratio;
  rec.checks["constant_fixed"] = rep.defect_constant <= 1e-10;
  rec.checks["affine_fixed"] = rep.defect_affine <= 1e-8;
  rec.checks["harmonic_ratio"] = rep.ratio <= 1e-3;
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

int run_barrier(const sm::RunConfig& cfg, json& results, sm::RunRecord& rec) {
  const sm::OperatorSpec spec = cfg.make_operator();
  const auto grid = cfg.make_grid();
  sm::Barrier bar;
  {
    Timer t(rec, "barrier");
    bar = sm::build_barrier(grid, spec, 1.0);
  }
  emit_field(cfg, bar.w, "barrier.csv", rec, "barrier");
  results["R"] = bar.R;
  results["center"] = {bar.center[0], bar.center[1]};
  results["beta"] = bar.beta;
  results["max_generator_defect"] = bar.max_generator_defect;
  results["notes"] = bar.notes;
  rec.checks["defect_below_one"] = bar.max_generator_defect <= 1.0;
  // Concavity spot check on |r| <= R/4.
  bool concave = true;
  sm::Rng rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto omega = grid->omega_indices();
  for (int t = 0; t < 200 && concave; ++t) {
    const std::size_t k = omega[static_cast<std::size_t>(unif(rng) * omega.size()) % omega.size()];
    const sm::Vec2 x = grid->point(k);
    const double r = (0.01 + 0.99 * unif(rng)) * bar.R / 4.0;
    const double phi = 2.0 * std::numbers::pi * unif(rng);
    const sm::Vec2 dir = grid->dim == 1 ? sm::Vec2{1.0, 0.0}
                                        : sm::Vec2{std::cos(phi), std::sin(phi)};
    const double d2 = bar.value({x[0] + r * dir[0], x[1] + r * dir[1]}) +
                      bar.value({x[0] - r * dir[0], x[1] - r * dir[1]}) -
                      2.0 * bar.value(x);
    if (d2 > 1e-12) concave = false;
  }
  rec.checks["concave_near_zone"] = concave;
  return rec.all_pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed local-nonlocal stable-operator laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  std::uint64_t seed_override = 0;
  bool seed_set = false;
  int threads_override = 0;
  double t_override = 0.0;
  std::string method_override;
  bool gnuplot = false;

  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--out", out_override, "output directory");
  app.add_option("--seed", seed_override, "seed override")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads_override, "worker threads");
  app.add_flag("--gnuplot", gnuplot, "emit gnuplot scripts next to CSVs");

  auto* sc_symbol = app.add_subcommand("symbol", "symbol and ellipticity scan");
  auto* sc_apply = app.add_subcommand("apply", "apply the operator to a catalog field");
  auto* sc_solve = app.add_subcommand("solve", "Dirichlet solve");
  sc_solve->add_option("--method", method_override, "direct|picard");
  auto* sc_picard = app.add_subcommand("picard", "contraction construction");
  auto* sc_heat = app.add_subcommand("heatkernel", "heat kernel slice");
  sc_heat->add_option("--t", t_override, "kernel time");
  auto* sc_maxprin = app.add_subcommand("maxprin-check", "maximum principle trials");
  auto* sc_reg = app.add_subcommand("regularity", "interior seminorm experiment");
  auto* sc_bdry = app.add_subcommand("boundary", "boundary exponent fit");
  auto* sc_liou = app.add_subcommand("liouville", "heat-kernel fixed-point harness");
  auto* sc_barrier = app.add_subcommand("barrier", "barrier construction");
  // global flags remain usable after the subcommand name
  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : kExitUsage;
  }

  try {
    sm::RunConfig cfg;
    if (!config_path.empty()) {
      cfg = sm::parse_config(config_path);
    } else {
      throw sm::ConfigError("--config is required");
    }
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_set) cfg.seed = seed_override;
    if (threads_override > 0) cfg.threads = threads_override;
    if (t_override > 0.0) cfg.t_time = t_override;
    if (!method_override.empty()) cfg.method = method_override;
    if (gnuplot) cfg.gnuplot = true;

    sm::RunRecord rec;
    json results;
    int code = kExitPass;
    if (sc_symbol->parsed()) {
      cfg.problem = "symbol";
      hash_into_record(cfg, config_path, rec);
      code = run_symbol(cfg, results, rec);
    } else if (sc_apply->parsed()) {
      cfg.problem = "apply";
      hash_into_record(cfg, config_path, rec);
      code = run_apply(cfg, results, rec);
    } else if (sc_solve->parsed()) {
      cfg.problem = "solve";
      hash_into_record(cfg, config_path, rec);
      code = run_solve(cfg, results, rec);
    } else if (sc_picard->parsed()) {
      cfg.problem = "picard";
      hash_into_record(cfg, config_path, rec);
      code = run_picard(cfg, results, rec);
    } else if (sc_heat->parsed()) {
      cfg.problem = "heatkernel";
      hash_into_record(cfg, config_path, rec);
      code = run_heatkernel(cfg, results, rec);
    } else if (sc_maxprin->parsed()) {
      cfg.problem = "maxprin";
      hash_into_record(cfg, config_path, rec);
      code = run_maxprin(cfg, results, rec);
    } else if (sc_reg->parsed()) {
      cfg.problem = "regularity";
      hash_into_record(cfg, config_path, rec);
      code = run_regularity(cfg, results, rec);
    } else if (sc_bdry->parsed()) {
      cfg.problem = "boundary";
      hash_into_record(cfg, config_path, rec);
      code = run_boundary(cfg, results, rec);
    } else if (sc_liou->parsed()) {
      cfg.problem = "liouville";
      hash_into_record(cfg, config_path, rec);
      code = run_liouville(cfg, results, rec);
    } else if (sc_barrier->parsed()) {
      cfg.problem = "barrier";
      hash_into_record(cfg, config_path, rec);
      code = run_barrier(cfg, results, rec);
    }
    results["simd"] = sm::kernels::active_ops().name;
    const std::string rpath = out_path(cfg, "report.json");
    sm::write_report_json(rpath, sm::canonical_config(cfg), results, rec);
    std::cout << (code == kExitPass ? "PASS " : "FAIL ") << rpath << "\n";
    return code;
  } catch (const sm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sm::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
