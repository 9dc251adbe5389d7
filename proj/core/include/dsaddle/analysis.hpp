#pragma once

#include "dsaddle/report.hpp"

#include <string>
#include <vector>

namespace dsaddle {

struct AnalysisOptions {
  /// Any of "unprec", "prec-exact", "prec-inexact".
  std::vector<std::string> scenarios{"unprec", "prec-exact", "prec-inexact"};
  /// Preconditioner used by "prec-inexact".
  PreconditionerStrategy strategy;
  /// "measured" or "certified" equivalence constants for "prec-inexact".
  std::string constants = "measured";
  SpectralOptions spectral;
  Tolerances tol;
  double containment_tol = 1e-9;
  double cluster_tol = 1e-8;
};

/// Validates the system, then for each scenario computes the predicted
/// intervals and, below the oracle cutoff, the spectrum and containment
/// verdicts. Scenarios are skipped when validation fails.
AnalysisReport analyze(const DoubleSaddleSystem& system, const ProblemInfo& problem,
                       const AnalysisOptions& opts = {});

}  // namespace dsaddle
