#pragma once

#include "stablemix/barrier.hpp"
#include "stablemix/linear_system.hpp"

namespace stablemix {

// T_lambda(w): solution of the local problem
// (-div(a grad u)) + lambda u = f - (-defL) w with exterior-zero data.
// Requires lambda_shift > 0.
Field contraction_map(const MixedProblem& p, const Field& w);

struct NoContraction : NumericError {
  explicit NoContraction(double lambda)
      : NumericError("no contraction at this lambda"), lambda(lambda) {}
  double lambda;
};

// Fixed-point iteration u_k = T_lambda(u_{k-1}) from u_0 = T_lambda(0);
// converges to the lambda-shifted mixed problem. If p.lambda_shift == 0 the
// shift is auto-selected by doubling from 1 until five probe steps measure a
// ratio below 0.9.
SolveReport solve_picard(const MixedProblem& p, double tol, int max_iter);

struct VlambdaReport {
  double lambda = 0.0;
  double v_inf = 0.0;
  double bound = 0.0;  // 2/lambda
  bool pass = false;
  double phi_at_zero = 0.0;
  bool dominated = false;         // v <= phi(w) pointwise on Omega
  double max_violation = 0.0;     // max(v - phi(w), 0)
  double barrier_beta = 0.0;
};

// Solves (-defL)v - Lap v + lambda v = 1 with a == 1 and exterior-zero data;
// PASS iff |v|_inf <= 2/lambda + 1e-8. Also evaluates the barrier composition
// phi(t) = (1 + e^{-lambda t})/lambda and records the pointwise domination.
VlambdaReport comparison_vlambda(std::shared_ptr<const GridDomain> grid,
                                 const OperatorSpec& spec, double lambda);

}  // namespace stablemix
