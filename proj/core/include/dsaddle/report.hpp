#pragma once

#include "dsaddle/bounds.hpp"
#include "dsaddle/containment.hpp"
#include "dsaddle/krylov.hpp"
#include "dsaddle/matrix_io.hpp"
#include "dsaddle/precond.hpp"
#include "dsaddle/spectral.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dsaddle {

inline constexpr int kReportSchema = 1;

struct SpectrumSummary {
  bool computed = false;
  double min = 0.0;
  double max = 0.0;
  Inertia counts;
  std::vector<double> values;  ///< ascending; empty when not computed
};

struct ContainmentSummary {
  std::string verdict = "unverified";  ///< "pass", "fail" or "unverified"
  Index outside = 0;
  double min_slack = 0.0;
  std::vector<Index> discrete_counts;
  std::vector<Index> cluster_counts;
  std::vector<std::string> messages;
};

struct ConstantsSummary {
  std::string source;  ///< "measured" or "certified"
  EquivalenceConstants consts;
  std::vector<Equivalence> measured;  ///< per block, empty for certified
};

struct ScenarioReport {
  std::string scenario;        ///< "unprec", "prec-exact" or "prec-inexact"
  std::string preconditioner;  ///< strategy name, "none" for unprec
  BoundIntervals bounds;
  std::optional<ConstantsSummary> constants;
  std::optional<double> eta_d;
  std::optional<double> eta_e;
  SpectrumSummary spectrum;
  ContainmentSummary containment;
};

struct AnalysisReport {
  int schema = kReportSchema;
  ProblemInfo problem;
  Dims dims;
  BlockExtremes extremes;
  ValidationReport validation;
  std::vector<ScenarioReport> scenarios;
  std::map<std::string, double> timings;  ///< seconds

  /// Validation passes and no scenario failed containment.
  bool pass() const;
};

/// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
std::string to_json(const AnalysisReport& report, int indent = 2);
AnalysisReport report_from_json(const std::string& text);

struct SolveReport {
  ProblemInfo problem;
  Dims dims;
  std::string preconditioner;
  double rtol = 0.0;
  SolveResult result;
  double true_relative_residual = 0.0;  ///< ||K x - b|| / ||b||
  double seconds = 0.0;
};

std::string to_json(const SolveReport& report, int indent = 2);

/// "iteration,relative_residual" rows.
std::string residual_csv(const SolveResult& result);

/// One eigenvalue series with its bound lines.
struct PlotSeries {
  std::string label;
  std::vector<double> values;
  Interval negative;
  Interval positive;
};

/// A series for every scenario of `report` that carries a spectrum.
std::vector<PlotSeries> plot_series(const AnalysisReport& report);

/// With one series the columns are index, eigenvalue, bound_neg_lo,
/// bound_neg_hi, bound_pos_lo, bound_pos_hi. With several, every column but
/// index gets a _<k> suffix (k = 1, 2, ...). Shorter series leave cells
/// empty. Numbers use %.17g.
std::string plot_csv(const std::vector<PlotSeries>& series);

}  // namespace dsaddle
