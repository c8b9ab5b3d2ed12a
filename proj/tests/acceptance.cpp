// Acceptance harness: runs every gate criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "stablemix/barrier.hpp"
#include "stablemix/heat_kernel.hpp"
#include "stablemix/max_principle.hpp"
#include "stablemix/picard.hpp"
#include "stablemix/regularity.hpp"
#include "stablemix/spectral_apply.hpp"

using namespace stablemix;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [FAILED: " << what << "]";
    }
  }
};

OperatorSpec spec_1d(double s, double w = 1.0) {
  OperatorSpec spec;
  spec.s = s;
  spec.measure = SpectralMeasure::atomic_1d(w, w);
  return spec;
}

OperatorSpec spec_axis2d(double s, double w = 1.0) {
  OperatorSpec spec;
  spec.s = s;
  spec.measure = SpectralMeasure::axis_2d(w);
  return spec;
}

// C1: quadrature vs transform route on a Gaussian, 1024-point grid,
// relative sup error <= 1e-4 on the inner half, <= 10 s per case.
Criterion c1_operator_oracle() {
  Criterion c;
  auto grid = GridDomain::box(1, 10.0, 1024);
  Field u = Field::from_function(
      grid, [](Vec2 x) { return std::exp(-x[0] * x[0]); }, 0.0);
  for (int m = 0; m < 2; ++m) {
    for (double s : {0.25, 0.5, 0.75}) {
      OperatorSpec spec;
      spec.s = s;
      spec.measure = m == 0 ? SpectralMeasure::uniform(1, 1.0)
                            : SpectralMeasure::atomic_1d(2.0, 2.0);
      const auto t0 = std::chrono::steady_clock::now();
      const auto plan = make_plan(spec, *grid);
      const Field lf = apply_fft(spec, u);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < grid->points; ++i) {
        if (std::abs(grid->coord(i)) > 5.0) continue;
        num = std::max(num, std::abs(apply_L(plan, u, i) - lf.values[i]));
        den = std::max(den, std::abs(lf.values[i]));
      }
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      const double rel = num / den;
      c.detail << (m == 0 ? " uniform" : " atomic") << "/s=" << s
               << " rel=" << rel;
      std::ostringstream what;
      what << "rel error " << rel << " > 1e-4 at s=" << s;
      c.require(rel <= 1e-4, what.str());
      c.require(secs <= 10.0, "runtime above 10 s per case");
    }
  }
  return c;
}

// C2: constants annihilated everywhere, affine fields deep inside, for every
// catalog measure.
Criterion c2_annihilation() {
  Criterion c;
  struct Case {
    std::string name;
    OperatorSpec spec;
    int dim;
  };
  std::vector<Case> cases;
  cases.push_back({"1d-atomic", spec_1d(0.5), 1});
  {
    OperatorSpec s;
    s.s = 0.3;
    s.measure = SpectralMeasure::uniform(1, 1.0);
    cases.push_back({"1d-uniform", s, 1});
  }
  cases.push_back({"2d-axis", spec_axis2d(0.6), 2});
  {
    OperatorSpec s;
    s.s = 0.5;
    s.measure = SpectralMeasure::uniform(2, 1.0, 128);
    cases.push_back({"2d-uniform", s, 2});
  }
  {
    OperatorSpec s;
    s.s = 0.7;
    s.measure = parse_measure_text(
        "kind = density\ndensity = cospower\nsamples = 128\n", 2);
    cases.push_back({"2d-cospower", s, 2});
  }
  for (auto& [name, spec, dim] : cases) {
    auto grid = GridDomain::box(dim, 2.0, dim == 1 ? 257 : 97);
    spec.tail_radius = 0.6;  // deep-interior margin for the affine check
    const auto plan = make_plan(spec, *grid);
    Field ones(grid, 1.0);
    ones.exterior_value = 1.0;
    Field aff = Field::from_function(
        grid, [](Vec2 x) { return 0.8 * x[0] - 0.35 * x[1] + 0.1; }, 0.0);
    double worst_c = 0.0, worst_a = 0.0;
    for (std::size_t k = 0; k < grid->size(); ++k) {
      worst_c = std::max(worst_c, std::abs(apply_L(plan, ones, k)));
      const Vec2 x = grid->point(k);
      double edge = 2.0 - std::abs(x[0]);
      if (dim == 2) edge = std::min(edge, 2.0 - std::abs(x[1]));
      if (edge > 0.65)
        worst_a =
            std::max(worst_a, std::abs(apply_L(plan, aff, k, TailModel::None)));
    }
    c.detail << " " << name << " const=" << worst_c << " affine=" << worst_a;
    c.require(worst_c <= 1e-8, name + ": constant annihilation");
    c.require(worst_a <= 1e-8 * aff.max_abs(), name + ": affine annihilation");
  }
  return c;
}

// C3: 20 seeded nonnegative sources on a 2D 128^2 mixed problem.
Criterion c3_max_principle() {
  Criterion c;
  MixedProblem p;
  p.grid = GridDomain::disk(1.3, 128, {0.0, 0.0}, 1.0);
  p.op = spec_axis2d(0.5);
  p.a = make_coefficient("smooth-sine", 0.5, 1.0, 2.0, p.grid);
  p.f = Field(p.grid);
  const MaxPrinReport rep = check_max_principle(p, 20, 20240618, true, 2);
  double worst = 0.0;
  for (const auto& t : rep.trials)
    worst = std::min(worst, t.min_u / std::max(t.f_inf, 1e-300));
  c.detail << " trials=20 worst(min_u/|f|)=" << worst
           << " failures=" << rep.failures;
  c.require(rep.pass, "some trial dipped below -1e-8 |f|_inf");
  return c;
}

// C4: heat kernel mass/moment/Lipschitz/Gaussian limit/semigroup.
Criterion c4_heat_kernel() {
  Criterion c;
  const double s = 0.5, delta = 0.25 * 2.0 * s;
  const MixedSymbol A(spec_1d(s), 1.0);
  auto g1 = GridDomain::box(1, 40.0, 2049);
  auto g2 = GridDomain::box(1, 40.0, 4097);
  const KernelSlice k1 = heat_kernel(A, g1, 1.0);
  const KernelSlice k2 = heat_kernel(A, g2, 1.0);
  c.detail << " |mass-1|=" << std::abs(k2.mass - 1.0);
  c.require(std::abs(k2.mass - 1.0) <= 1e-6, "unit mass");

  const double m1 = moment_check(k1, s, delta);
  const double m2 = moment_check(k2, s, delta);
  c.detail << " moment=" << m2 << " drift=" << std::abs(m2 - m1) / m1;
  c.require(std::isfinite(m2) && std::abs(m2 - m1) <= 0.05 * m1,
            "moment refinement stability (5%)");

  const double l1 = lipschitz_seminorm(k1);
  const double l2 = lipschitz_seminorm(k2);
  c.detail << " lip_drift=" << std::abs(l2 - l1) / l1;
  c.require(std::abs(l2 - l1) <= 0.10 * l1,
            "Lipschitz refinement stability (10%)");

  // Gaussian limiting case.
  OperatorSpec none;
  none.s = 0.5;
  none.measure = SpectralMeasure::uniform(1, 0.0);
  const double a = 1.0, t = 1.0;
  auto gg = GridDomain::box(1, 24.0, 4097);
  const KernelSlice kg = heat_kernel(MixedSymbol(none, a), gg, t);
  double sup = 0.0;
  for (int i = 0; i < gg->points; ++i) {
    const double x = gg->coord(i);
    const double G = std::exp(-x * x / (4.0 * a * t)) /
                     std::sqrt(4.0 * std::numbers::pi * a * t);
    sup = std::max(sup, std::abs(kg.values[i] - G));
  }
  c.detail << " gauss_sup=" << sup;
  c.require(sup <= 1e-6, "Gaussian limiting case (1e-6)");

  const KernelSlice kt2 = heat_kernel(A, g2, 2.0);
  const auto conv = convolve_periodic(k2, k2);
  double semi = 0.0;
  for (std::size_t i = 0; i < conv.size(); ++i)
    semi = std::max(semi, std::abs(conv[i] - kt2.values[i]));
  c.detail << " semigroup=" << semi;
  c.require(semi <= 1e-6, "semigroup defect (1e-6)");
  return c;
}

// C5: two-sided symbol bounds for every catalog measure and a in {.5,1,2}.
Criterion c5_symbol_sandwich() {
  Criterion c;
  std::vector<std::pair<std::string, OperatorSpec>> specs;
  specs.push_back({"1d-atomic", spec_1d(0.5)});
  {
    OperatorSpec s;
    s.s = 0.25;
    s.measure = SpectralMeasure::uniform(1, 1.0);
    specs.push_back({"1d-uniform", s});
  }
  specs.push_back({"2d-axis", spec_axis2d(0.75)});
  {
    OperatorSpec s;
    s.s = 0.5;
    s.measure = SpectralMeasure::uniform(2, 1.0, 128);
    specs.push_back({"2d-uniform", s});
  }
  {
    OperatorSpec s;
    s.s = 0.6;
    s.measure = parse_measure_text(
        "kind = density\ndensity = cospower\nsamples = 128\n", 2);
    specs.push_back({"2d-cospower", s});
  }
  double lam_min = 1e300, Lam_max = 0.0;
  for (const auto& [name, spec] : specs)
    for (double a : {0.5, 1.0, 2.0}) {
      const auto b = symbol_sandwich(MixedSymbol(spec, a), 300.0, 72);
      c.require(b.lambda > 0.0, name + ": lambda > 0");
      c.require(std::isfinite(b.Lambda), name + ": Lambda finite");
      c.require(b.lambda <= b.Lambda, name + ": lambda <= Lambda");
      lam_min = std::min(lam_min, b.lambda);
      Lam_max = std::max(Lam_max, b.Lambda);
    }
  c.detail << " min(lambda)=" << lam_min << " max(Lambda)=" << Lam_max;
  return c;
}

// C6: Picard construction and the resolvent bound.
Criterion c6_picard() {
  Criterion c;
  MixedProblem p;
  p.grid = GridDomain::interval(2.0, 513, -1.0, 1.0);
  p.op = spec_1d(0.5);
  p.a = make_coefficient("constant", 0.5, 1.0, 1.0, p.grid);
  p.f = Field(p.grid);
  for (std::size_t k : p.grid->omega_indices()) p.f.values[k] = 1.0;
  const double tol = 1e-9;
  const SolveReport pic = solve_picard(p, tol, 100);
  double worst = 0.0;
  for (double r : pic.contraction_ratios) worst = std::max(worst, r);
  c.detail << " lambda=" << pic.lambda << " K=" << worst;
  c.require(!pic.contraction_ratios.empty() && worst < 0.9,
            "measured contraction ratio below 0.9");
  // geometric decay: every ratio below 1
  bool geometric = true;
  for (double r : pic.contraction_ratios)
    if (r >= 1.0) geometric = false;
  c.require(geometric, "increments decay geometrically");

  MixedProblem shifted = p;
  shifted.lambda_shift = pic.lambda;
  const SolveReport direct = solve_direct(shifted);
  double diff = 0.0;
  for (std::size_t k = 0; k < pic.u.values.size(); ++k)
    diff = std::max(diff, std::abs(pic.u.values[k] - direct.u.values[k]));
  c.detail << " |picard-direct|=" << diff;
  c.require(diff <= 10.0 * tol, "limit matches the shifted direct solve");

  auto vgrid = GridDomain::interval(1.0, 257, 0.3, 0.7);
  for (double lambda : {10.0, 40.0, 160.0}) {
    const VlambdaReport vr = comparison_vlambda(vgrid, spec_1d(0.5), lambda);
    std::ostringstream what;
    what << "|v|_inf <= 2/lambda at lambda=" << lambda;
    c.require(vr.pass, what.str());
  }
  c.detail << " v_lambda bounds ok";
  return c;
}

// C7: barrier search on the standard 1D and 2D annulus configurations.
Criterion c7_barrier() {
  Criterion c;
  {
    auto grid = GridDomain::interval(1.0, 257, 0.3, 0.7);
    const Barrier bar = build_barrier(grid, spec_1d(0.5), 1.0);
    c.detail << " 1d: beta=" << bar.beta << " defect=" << bar.max_generator_defect;
    c.require(bar.max_generator_defect <= 1.0, "1d defect <= 1");
    bool concave = true;
    for (std::size_t k : grid->omega_indices()) {
      const Vec2 x = grid->point(k);
      for (double fr : {0.2, 0.6, 1.0}) {
        const double r = fr * bar.R / 4.0;
        if (bar.value({x[0] + r, 0.0}) + bar.value({x[0] - r, 0.0}) -
                2.0 * bar.value(x) >
            1e-12)
          concave = false;
      }
    }
    c.require(concave, "1d concavity on |r| <= R/4 at every Omega point");
  }
  {
    auto grid = GridDomain::disk(1.2, 97, {0.45, 0.0}, 0.22);
    const Barrier bar = build_barrier(grid, spec_axis2d(0.6), 1.0);
    c.detail << " 2d: beta=" << bar.beta << " defect=" << bar.max_generator_defect;
    c.require(bar.max_generator_defect <= 1.0, "2d defect <= 1");
    bool concave = true;
    Rng rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t k : grid->omega_indices()) {
      const Vec2 x = grid->point(k);
      const double r = (0.05 + 0.95 * unif(rng)) * bar.R / 4.0;
      const double phi = 2.0 * std::numbers::pi * unif(rng);
      const Vec2 d{std::cos(phi), std::sin(phi)};
      if (bar.value({x[0] + r * d[0], x[1] + r * d[1]}) +
              bar.value({x[0] - r * d[0], x[1] - r * d[1]}) -
              2.0 * bar.value(x) >
          1e-12)
        concave = false;
    }
    c.require(concave, "2d concavity on |r| <= R/4 at every Omega point");
  }
  return c;
}

// C8: boundary exponents: mixed ~ 1, pure nonlocal ~ s, 3-sigma separated.
// The mixed run carries a weak jump part: the exponent is 1 for any mass,
// while a small mass keeps the subleading d^{1+s} term from biasing the
// finite-window fit.
Criterion c8_boundary() {
  Criterion c;
  auto solve_kappa = [&](bool local_on, double s, int points, double mass_w,
                         LinearFit& fit) {
    MixedProblem p;
    p.grid = GridDomain::interval(2.0, points, -1.0, 1.0);
    p.op = spec_1d(s, mass_w);
    p.a = make_coefficient("constant", 0.5, 1.0, 1.0, p.grid);
    p.include_local = local_on;
    p.f = Field(p.grid);
    for (std::size_t k : p.grid->omega_indices()) p.f.values[k] = 1.0;
    const SolveReport r = solve_direct(p);
    return boundary_exponent(r.u, *p.grid, &fit);
  };
  LinearFit fmix;
  const double kmix = solve_kappa(true, 0.5, 4097, 0.02, fmix);
  c.detail << " mixed kappa=" << kmix;
  c.require(std::abs(kmix - 1.0) <= 0.05, "mixed exponent 1 +- 0.05");
  for (double s : {0.3, 0.5, 0.7}) {
    LinearFit fp;
    const double kp = solve_kappa(false, s, 1025, 1.0, fp);
    c.detail << " pure(s=" << s << ")=" << kp;
    std::ostringstream what;
    what << "pure exponent " << kp << " != " << s << " +- 0.05";
    c.require(std::abs(kp - s) <= 0.05, what.str());
    const double sep = std::sqrt(fmix.slope_stderr * fmix.slope_stderr +
                                 fp.slope_stderr * fp.slope_stderr);
    c.require(std::abs(kmix - kp) >= 3.0 * sep,
              "mixed/pure fits separated by 3 standard errors");
  }
  return c;
}

// C9: convolution fixed points: constants exact, affine within 1e-8,
// harmonic fields within 1e-3 osc, not growing under refinement.
Criterion c9_liouville() {
  Criterion c;
  const OperatorSpec spec = spec_1d(0.85, 0.125);
  const LiouvilleReport coarse =
      liouville_harness(spec, 1.0, 2049, 64.0, 6.0, 0.077);
  const LiouvilleReport fine =
      liouville_harness(spec, 1.0, 4097, 64.0, 6.0, 0.077);
  c.detail << " const=" << fine.defect_constant
           << " affine=" << fine.defect_affine << " ratio(N)=" << coarse.ratio
           << " ratio(2N)=" << fine.ratio;
  c.require(fine.defect_constant <= 1e-12, "constants exact");
  c.require(fine.defect_affine <= 1e-8, "affine fixed within 1e-8");
  c.require(coarse.ratio <= 1e-3 && fine.ratio <= 1e-3,
            "harmonic defect <= 1e-3 osc");
  c.require(fine.defect_harmonic <=
                coarse.defect_harmonic + 1e-4 * fine.oscillation,
            "defect does not grow under refinement");
  return c;
}

// C10: generator exponents recovered; interior seminorms bounded for the
// case-(a) configurations with smooth data.
Criterion c10_regularity_lab() {
  Criterion c;
  auto g = GridDomain::box(1, 1.0, 2049);
  Region reg{{-0.9, 0.0}, {0.9, 0.0}};
  for (double alpha : {0.3, 0.5, 0.7}) {
    auto cf = make_coefficient("weierstrass-alpha", alpha, 1.0, 2.0, g, 2024);
    const double fitted = recover_exponent(cf.samples, reg).slope;
    c.detail << " alpha=" << alpha << "->" << fitted;
    std::ostringstream what;
    what << "exponent " << fitted << " outside " << alpha << " +- 0.1";
    c.require(std::abs(fitted - alpha) <= 0.1, what.str());
  }
  struct Cfg {
    double s, alpha;
  };
  for (const Cfg cc : {Cfg{0.75, 0.5}, Cfg{0.6, 0.4}}) {
    InteriorExperimentConfig ic;
    ic.s = cc.s;
    ic.alpha = cc.alpha;
    ic.coef_kind = "smooth-sine";
    ic.f_kind = "smooth";
    ic.points = 1025;
    const auto res = interior_experiment(ic);
    c.require(res.case_label == "a", "configuration is case (a)");
    for (const auto& r : res.reports) {
      std::ostringstream what;
      what << "seminorm bounded at order " << r.order << " (s=" << cc.s << ")";
      c.require(r.bounded, what.str());
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {"C1 operator oracle equivalence", c1_operator_oracle},
      {"C2 affine/constant annihilation", c2_annihilation},
      {"C3 maximum principle", c3_max_principle},
      {"C4 heat kernel", c4_heat_kernel},
      {"C5 symbol sandwich", c5_symbol_sandwich},
      {"C6 picard construction", c6_picard},
      {"C7 barrier", c7_barrier},
      {"C8 boundary regularity", c8_boundary},
      {"C9 liouville surrogate", c9_liouville},
      {"C10 regularity-lab self-calibration", c10_regularity_lab},
  };
  int failures = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.pass = false;
      c.detail << " [EXCEPTION: " << ex.what() << "]";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] %s (%.1fs)%s\n", c.pass ? "PASS" : "FAIL", e.name, secs,
                c.detail.str().c_str());
    std::fflush(stdout);
    if (!c.pass) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
