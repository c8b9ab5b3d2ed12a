#include "stablemix/linear_system.hpp"

#include <algorithm>
#include <cmath>

#include "stablemix/kernels.hpp"

namespace stablemix {

void MixedProblem::validate_or_throw() const {
  if (!grid) throw ConfigError("problem has no grid");
  if (include_nonlocal) op.validate_or_throw();
  const auto av = a.validate();
  if (!av.empty()) throw ConfigError("invalid coefficient: " + av.front());
  if (lambda_shift < 0.0) throw ConfigError("lambda_shift must be nonnegative");
  if (!f.grid || f.grid->size() != grid->size())
    throw ConfigError("right-hand side grid mismatch");
  for (std::size_t k : grid->omega_indices())
    if (!std::isfinite(f.values[k]))
      throw ConfigError("right-hand side not finite on Omega");
  if (!include_local && !include_nonlocal)
    throw ConfigError("problem with both operator terms switched off");
}

MixedOperator::MixedOperator(const MixedProblem& p)
    : grid_(p.grid),
      lambda_(p.lambda_shift),
      use_nonlocal_(p.include_nonlocal && p.op.measure.total_mass > 0.0),
      use_local_(p.include_local),
      omega_(p.grid->omega_indices()),
      a_(p.a.samples) {
  const auto& g = *grid_;
  if (omega_.empty()) throw ConfigError("Omega mask is empty");
  if (use_nonlocal_) nonlocal_.emplace(p.op, grid_);

  const int P = g.points;
  if (use_local_) {
    for (int ax = 0; ax < g.dim; ++ax) {
      ap_[ax].assign(g.size(), 0.0);
      am_[ax].assign(g.size(), 0.0);
    }
    auto aval = [&](int i, int j) {
      if (i < 0 || i >= P || (g.dim == 2 && (j < 0 || j >= P)))
        return a_.exterior_value;
      return a_.values[g.index(i, j)];
    };
    const int di[2] = {1, 0}, dj[2] = {0, 1};
    for (std::size_t k = 0; k < g.size(); ++k) {
      const int i = static_cast<int>(k) % P;
      const int j = g.dim == 2 ? static_cast<int>(k) / P : 0;
      for (int ax = 0; ax < g.dim; ++ax) {
        ap_[ax][k] = 0.5 * (a_.values[k] + aval(i + di[ax], j + dj[ax]));
        am_[ax][k] = 0.5 * (a_.values[k] + aval(i - di[ax], j - dj[ax]));
      }
    }
  }

  ufull_.assign(g.size(), 0.0);
  sfull_.assign(g.size(), 0.0);
  lfull_.assign(g.size(), 0.0);

  jacobi_.resize(omega_.size());
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (std::size_t r = 0; r < omega_.size(); ++r) {
    const std::size_t k = omega_[r];
    double d = lambda_;
    if (use_nonlocal_) d += -nonlocal_->diagonal();
    if (use_local_)
      for (int ax = 0; ax < g.dim; ++ax)
        d += (ap_[ax][k] + am_[ax][k]) * inv_h2;
    jacobi_[r] = d;
  }
}

void MixedOperator::elliptic_full(std::span<const double> ufull,
                                  std::span<double> out) {
  const auto& g = *grid_;
  const int P = g.points;
  const auto& ops = kernels::active_ops();
  std::fill(out.begin(), out.end(), 0.0);
  if (use_local_) {
    // +div(a grad u) accumulated, negated at the end.
    const double inv_h2 = 1.0 / (g.h * g.h);
    if (g.dim == 1) {
      ops.flux_row(ufull.data(), am_[0].data(), ap_[0].data(), out.data(), 1,
                   P - 1, 1, inv_h2);
    } else {
      for (int j = 1; j < P - 1; ++j) {
        const std::size_t lo = static_cast<std::size_t>(j) * P + 1;
        const std::size_t hi = lo + P - 2;
        ops.flux_row(ufull.data(), am_[0].data(), ap_[0].data(), out.data(),
                     lo, hi, 1, inv_h2);
        ops.flux_row(ufull.data(), am_[1].data(), ap_[1].data(), out.data(),
                     lo, hi, P, inv_h2);
      }
    }
    ops.scale(-1.0, out.data(), out.size());
  }
  if (use_nonlocal_) {
    nonlocal_->apply(ufull, sfull_);
    ops.axpy(-1.0, sfull_.data(), out.data(), out.size());
  }
  if (lambda_ != 0.0) ops.axpy(lambda_, ufull.data(), out.data(), out.size());
}

void MixedOperator::apply(std::span<const double> x, std::span<double> y) {
  for (std::size_t r = 0; r < omega_.size(); ++r) ufull_[omega_[r]] = x[r];
  elliptic_full(ufull_, lfull_);
  for (std::size_t r = 0; r < omega_.size(); ++r) y[r] = lfull_[omega_[r]];
}

void MixedOperator::apply_full(const Field& u, std::vector<double>& out) {
  out.resize(u.values.size());
  elliptic_full(u.values, out);
}

double MixedOperator::residual_sup(const Field& u, const Field& f) {
  std::vector<double> out;
  apply_full(u, out);
  double m = 0.0;
  for (std::size_t k : omega_)
    m = std::max(m, std::abs(out[k] - f.values[k]));
  return m;
}

CgStats conjugate_gradient(MixedOperator& A, std::span<const double> b,
                           std::span<double> x, const CgOptions& opt) {
  const std::size_t n = b.size();
  const auto& ops = kernels::active_ops();
  std::vector<double> r(n), z(n), p(n), q(n);
  const double bnorm = std::sqrt(ops.dot(b.data(), b.data(), n));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }
  // r = b - A x (x may carry a warm start)
  A.apply(x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
  const auto& d = A.jacobi();
  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / d[i];
  std::copy(z.begin(), z.end(), p.begin());
  double rz = ops.dot(r.data(), z.data(), n);
  double rnorm = std::sqrt(ops.dot(r.data(), r.data(), n));
  int it = 0;
  while (rnorm > opt.rtol * bnorm && it < opt.max_iter) {
    A.apply(p, q);
    const double pq = ops.dot(p.data(), q.data(), n);
    if (pq <= 0.0)
      throw CgError("conjugate gradient: system not positive definite",
                    rnorm / bnorm);
    const double alpha = rz / pq;
    ops.axpy(alpha, p.data(), x.data(), n);
    ops.axpy(-alpha, q.data(), r.data(), n);
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / d[i];
    const double rz_new = ops.dot(r.data(), z.data(), n);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rnorm = std::sqrt(ops.dot(r.data(), r.data(), n));
    ++it;
  }
  if (rnorm > opt.rtol * bnorm)
    throw CgError("conjugate gradient stalled after " + std::to_string(it) +
                      " iterations",
                  rnorm / bnorm);
  return {it, rnorm / bnorm};
}

namespace {

SolveReport solve_impl(const MixedProblem& p, const Field* prescribed) {
  p.validate_or_throw();
  MixedOperator A(p);
  const auto& omega = A.omega();
  std::vector<double> b(omega.size());
  Field base(p.grid);
  if (prescribed) {
    base = *prescribed;
    for (std::size_t k : omega) base.values[k] = 0.0;
    std::vector<double> reach;
    A.apply_full(base, reach);
    for (std::size_t r = 0; r < omega.size(); ++r)
      b[r] = p.f.values[omega[r]] - reach[omega[r]];
  } else {
    for (std::size_t r = 0; r < omega.size(); ++r) b[r] = p.f.values[omega[r]];
  }

  std::vector<double> x(omega.size(), 0.0);
  CgOptions opt;
  const double target = 1e-8 * (p.f.max_abs() + 1.0);
  SolveReport rep;
  rep.method = "direct";
  rep.lambda = p.lambda_shift;
  int total_iters = 0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const CgStats st = conjugate_gradient(A, b, x, opt);
    total_iters += st.iterations;
    rep.u = base;
    for (std::size_t r = 0; r < omega.size(); ++r) rep.u.values[omega[r]] = x[r];
    rep.u.exterior_value = 0.0;
    rep.residual_sup = A.residual_sup(rep.u, p.f);
    if (rep.residual_sup <= target || st.iterations == 0) break;
    opt.rtol *= 1e-2;  // tighten and warm-start
  }
  rep.iterations = total_iters;
  return rep;
}

}  // namespace

SolveReport solve_direct(const MixedProblem& p) { return solve_impl(p, nullptr); }

SolveReport solve_with_prescribed(const MixedProblem& p,
                                  const Field& prescribed) {
  return solve_impl(p, &prescribed);
}

}  // namespace stablemix
