#pragma once

#include <optional>
#include <span>

#include "stablemix/coefficient.hpp"
#include "stablemix/stable_operator.hpp"

namespace stablemix {

// Dirichlet problem data: elliptic operator (-defL) - div(a grad) + lambda
// on the grid's Omega mask, exterior-zero unless a prescribed field is given.
struct MixedProblem {
  OperatorSpec op;
  CoefficientField a;
  std::shared_ptr<const GridDomain> grid;
  Field f;
  double lambda_shift = 0.0;
  bool include_nonlocal = true;
  bool include_local = true;

  void validate_or_throw() const;
};

struct SolveReport {
  Field u;
  double residual_sup = 0.0;
  int iterations = 0;
  std::string method;
  std::vector<double> contraction_ratios;
  double lambda = 0.0;
  std::vector<std::string> notes;
};

struct CgError : NumericError {
  CgError(const std::string& msg, double resid)
      : NumericError(msg), last_residual(resid) {}
  double last_residual;
};

// Omega-restricted symmetric positive definite system with Jacobi-
// preconditioned conjugate gradients. Instances own scratch state; one solve
// at a time per instance.
class MixedOperator {
 public:
  explicit MixedOperator(const MixedProblem& p);

  std::size_t n() const { return omega_.size(); }
  const std::vector<std::size_t>& omega() const { return omega_; }

  // y = A x on the restricted index set.
  void apply(std::span<const double> x, std::span<double> y);
  // Full-grid elliptic application (no restriction): out = (-defL)u
  // - div(a grad u) + lambda*u pointwise on box-interior points.
  void apply_full(const Field& u, std::vector<double>& out);

  const std::vector<double>& jacobi() const { return jacobi_; }
  double residual_sup(const Field& u, const Field& f);

 private:
  std::shared_ptr<const GridDomain> grid_;
  double lambda_;
  bool use_nonlocal_, use_local_;
  std::vector<std::size_t> omega_;
  std::optional<NonlocalApplicator> nonlocal_;
  Field a_;
  std::vector<double> ap_[2], am_[2];  // face coefficients per axis
  std::vector<double> jacobi_;
  std::vector<double> ufull_, sfull_, lfull_;

  void elliptic_full(std::span<const double> ufull, std::span<double> out);
};

struct CgOptions {
  double rtol = 1e-12;
  int max_iter = 50000;
};
struct CgStats {
  int iterations = 0;
  double rel_residual = 0.0;
};

CgStats conjugate_gradient(MixedOperator& A, std::span<const double> b,
                           std::span<double> x, const CgOptions& opt);

// Direct linear solve; residual_sup <= 1e-8*(|f|_inf + 1) on success.
SolveReport solve_direct(const MixedProblem& p);

// Same system with prescribed values outside Omega (the field must carry the
// prescribed data on non-Omega points; Omega entries are ignored). Used by
// harnesses that drive a harmonic field with boundary-band data.
SolveReport solve_with_prescribed(const MixedProblem& p,
                                  const Field& prescribed);

}  // namespace stablemix
