#include "stablemix/picard.hpp"

#include <cmath>
#include <sstream>

#include "stablemix/kernels.hpp"

namespace stablemix {

namespace {

MixedProblem local_shifted(const MixedProblem& p, double lambda) {
  MixedProblem q = p;
  q.include_nonlocal = false;
  q.include_local = true;
  q.lambda_shift = lambda;
  return q;
}

// Shared iteration state: one local operator, one nonlocal applicator.
struct PicardLoop {
  const MixedProblem& p;
  double lambda;
  MixedProblem plocal;
  MixedOperator local_op;
  NonlocalApplicator nonlocal;
  std::vector<double> rhs, x, scratch;

  PicardLoop(const MixedProblem& prob, double lam)
      : p(prob),
        lambda(lam),
        plocal(local_shifted(prob, lam)),
        local_op(plocal),
        nonlocal(prob.op, prob.grid),
        rhs(local_op.n()),
        x(local_op.n(), 0.0),
        scratch(prob.grid->size()) {}

  // One application of T_lambda in place: w (full grid) -> u (full grid).
  void step(const std::vector<double>& w, std::vector<double>& u,
            double rtol) {
    nonlocal.apply(w, scratch);  // (defL) w
    const auto& omega = local_op.omega();
    for (std::size_t r = 0; r < omega.size(); ++r)
      rhs[r] = p.f.values[omega[r]] + scratch[omega[r]];
    CgOptions opt;
    opt.rtol = rtol;
    conjugate_gradient(local_op, rhs, x, opt);
    std::fill(u.begin(), u.end(), 0.0);
    for (std::size_t r = 0; r < omega.size(); ++r) u[omega[r]] = x[r];
  }
};

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Five probe steps; returns the worst measured ratio (inf if no signal).
double probe_ratio(const MixedProblem& p, double lambda) {
  PicardLoop loop(p, lambda);
  const std::size_t n = p.grid->size();
  std::vector<double> prev(n, 0.0), cur(n), next(n);
  loop.step(prev, cur, 1e-10);
  double d_prev = sup_diff(cur, prev);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    loop.step(cur, next, 1e-10);
    const double d = sup_diff(next, cur);
    if (d_prev > 0.0) worst = std::max(worst, d / d_prev);
    if (d == 0.0) return worst;
    d_prev = d;
    prev.swap(cur);
    cur.swap(next);
  }
  return worst;
}

}  // namespace

Field contraction_map(const MixedProblem& p, const Field& w) {
  if (!(p.lambda_shift > 0.0))
    throw ConfigError("contraction map requires lambda_shift > 0");
  p.validate_or_throw();
  PicardLoop loop(p, p.lambda_shift);
  std::vector<double> out(p.grid->size());
  loop.step(w.values, out, 1e-12);
  Field u(p.grid);
  u.values = std::move(out);
  return u;
}

SolveReport solve_picard(const MixedProblem& p, double tol, int max_iter) {
  p.validate_or_throw();
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  SolveReport rep;
  rep.method = "picard";

  double lambda = p.lambda_shift;
  if (lambda == 0.0) {
    lambda = 1.0;
    for (int k = 0; k < 31; ++k, lambda *= 2.0) {
      const double ratio = probe_ratio(p, lambda);
      if (ratio < 0.9) break;
    }
    std::ostringstream os;
    os << "auto-selected lambda=" << lambda;
    rep.notes.push_back(os.str());
  }
  rep.lambda = lambda;
  if (!p.a.is_constant_one())
    rep.notes.push_back("extension: non-constant coefficient in T_lambda");

  PicardLoop loop(p, lambda);
  const std::size_t n = p.grid->size();
  std::vector<double> prev(n, 0.0), cur(n), next(n);
  loop.step(prev, cur, 1e-12);  // u_0 from w = 0
  double d_prev = sup_diff(cur, prev);
  int bad_streak = 0;
  int iters = 1;
  for (int k = 1; k <= max_iter; ++k, ++iters) {
    loop.step(cur, next, 1e-12);
    const double d = sup_diff(next, cur);
    if (d_prev > 0.0) {
      const double ratio = d / d_prev;
      rep.contraction_ratios.push_back(ratio);
      bad_streak = (ratio >= 1.0) ? bad_streak + 1 : 0;
      if (bad_streak >= 5) throw NoContraction(lambda);
    }
    prev.swap(cur);
    cur.swap(next);
    d_prev = d;
    if (d <= tol) break;
  }
  rep.iterations = iters;

  rep.u = Field(p.grid);
  rep.u.values = cur;
  MixedProblem shifted = p;
  shifted.lambda_shift = lambda;
  MixedOperator full(shifted);
  rep.residual_sup = full.residual_sup(rep.u, p.f);
  return rep;
}

VlambdaReport comparison_vlambda(std::shared_ptr<const GridDomain> grid,
                                 const OperatorSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  MixedProblem p;
  p.op = spec;
  p.grid = grid;
  p.a = make_coefficient("constant", 0.5, 1.0, 1.0, grid);
  p.f = Field(grid);
  for (std::size_t k : grid->omega_indices()) p.f.values[k] = 1.0;
  p.lambda_shift = lambda;

  const SolveReport sol = solve_direct(p);
  VlambdaReport rep;
  rep.lambda = lambda;
  rep.bound = 2.0 / lambda;
  rep.phi_at_zero = 2.0 / lambda;
  double vinf = 0.0;
  for (std::size_t k : grid->omega_indices())
    vinf = std::max(vinf, std::abs(sol.u.values[k]));
  rep.v_inf = vinf;
  rep.pass = vinf <= rep.bound + 1e-8;

  const Barrier bar = build_barrier(grid, spec, 1.0);
  rep.barrier_beta = bar.beta;
  auto phi = [lambda](double t) {
    return (1.0 + std::exp(-lambda * t)) / lambda;
  };
  double viol = 0.0;
  for (std::size_t k : grid->omega_indices())
    viol = std::max(viol, sol.u.values[k] - phi(bar.w.values[k]));
  rep.max_violation = std::max(viol, 0.0);
  rep.dominated = viol <= 1e-9;
  return rep;
}

}  // namespace stablemix
