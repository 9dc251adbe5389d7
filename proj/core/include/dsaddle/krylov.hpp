#pragma once

#include "dsaddle/precond.hpp"
#include "dsaddle/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dsaddle {

struct SolveResult {
  Vector solution;
  /// ||r_k||_{M^{-1}} for k = 0, 1, ..., starting with ||b||_{M^{-1}}.
  std::vector<double> residual_history;
  Index iterations = 0;
  bool converged = false;
  std::optional<std::string> breakdown;
};

struct MinresOptions {
  double rtol = 1e-8;
  Index maxit = -1;              ///< -1 means 4 * dimension
  double breakdown_tol = 1e-14;  ///< relative to ||b||_{M^{-1}}
};

/// Preconditioned MINRES. `precond_inverse` applies M^{-1}; pass an empty
/// function for the unpreconditioned method. Stops when ||r_k||_{M^{-1}} <=
/// rtol * ||b||_{M^{-1}}. Throws DefinitenessError when the preconditioner
/// produces a negative M^{-1} inner product.
SolveResult minres(const MatVec& k, const MatVec& precond_inverse, const Vector& b,
                   const MinresOptions& opts = {});

/// Convenience overload; `m` may be null for no preconditioning.
SolveResult minres(const StoredMatrix& k, const PreconditionerOperator* m, const Vector& b,
                   const MinresOptions& opts = {});

struct ResidualRow {
  Index iteration = 0;
  double relative_residual = 0.0;
};

/// One row per history entry, residuals relative to the first.
std::vector<ResidualRow> residual_report(const SolveResult& result);

}  // namespace dsaddle
