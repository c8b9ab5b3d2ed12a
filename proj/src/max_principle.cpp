#include "stablemix/max_principle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace stablemix {

namespace {

Field random_bump_source(std::shared_ptr<const GridDomain> grid, Rng& rng,
                         bool nonneg) {
  const auto& g = *grid;
  std::uniform_int_distribution<int> nb(3, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double diam = g.omega_diameter();
  double lo[2] = {g.halfwidth, g.halfwidth}, hi[2] = {-g.halfwidth, -g.halfwidth};
  for (std::size_t k : g.omega_indices()) {
    const Vec2 p = g.point(k);
    for (int ax = 0; ax < g.dim; ++ax) {
      lo[ax] = std::min(lo[ax], p[ax]);
      hi[ax] = std::max(hi[ax], p[ax]);
    }
  }
  const int bumps = nb(rng);
  std::vector<double> cx(bumps), cy(bumps), wd(bumps), am(bumps);
  for (int b = 0; b < bumps; ++b) {
    cx[b] = lo[0] + (hi[0] - lo[0]) * unit(rng);
    cy[b] = g.dim == 2 ? lo[1] + (hi[1] - lo[1]) * unit(rng) : 0.0;
    wd[b] = diam * (0.125 + 0.2 * unit(rng));
    const double a = gauss(rng);
    am[b] = nonneg ? std::abs(a) + 0.1 : a;
  }
  Field f(grid);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec2 p = g.point(k);
    double v = 0.0;
    for (int b = 0; b < bumps; ++b) {
      const double dx = p[0] - cx[b], dy = p[1] - cy[b];
      v += am[b] * std::exp(-(dx * dx + dy * dy) / (2.0 * wd[b] * wd[b]));
    }
    f.values[k] = v;
  }
  return f;
}

}  // namespace

MaxPrinReport check_max_principle(const MixedProblem& base, int trials,
                                  std::uint64_t seed, bool nonneg_sources,
                                  int threads) {
  MixedProblem p = base;
  p.validate_or_throw();
  MaxPrinReport rep;
  rep.principle_applicable = nonneg_sources;
  rep.trials.resize(trials);

  threads = std::max(1, std::min(threads, trials));
  auto run_range = [&](int t0, int t1) {
    MixedOperator A(p);  // per-worker state
    const auto& omega = A.omega();
    std::vector<double> b(omega.size()), x(omega.size());
    for (int t = t0; t < t1; ++t) {
      Rng rng(seed + 1000003ull * static_cast<std::uint64_t>(t));
      MaxPrinTrial trial;
      try {
        const Field f = random_bump_source(p.grid, rng, nonneg_sources);
        trial.f_inf = f.max_abs();
        for (std::size_t r = 0; r < omega.size(); ++r)
          b[r] = f.values[omega[r]];
        std::fill(x.begin(), x.end(), 0.0);
        CgOptions opt;
        opt.rtol = 1e-12;
        conjugate_gradient(A, b, x, opt);
        double mn = 0.0;
        for (double v : x) mn = std::min(mn, v);
        trial.min_u = mn;
        trial.pass = !nonneg_sources || mn >= -1e-8 * trial.f_inf;
      } catch (const NumericError& e) {
        trial.solver_ok = false;
        trial.pass = false;
        trial.error = e.what();
      }
      rep.trials[t] = trial;
    }
  };
  if (threads == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int t0 = w * chunk, t1 = std::min(trials, t0 + chunk);
      if (t0 < t1) pool.emplace_back(run_range, t0, t1);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& t : rep.trials)
    if (!t.pass) ++rep.failures;
  rep.pass = rep.failures == 0;
  return rep;
}

}  // namespace stablemix
