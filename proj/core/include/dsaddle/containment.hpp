#pragma once

#include "dsaddle/bounds.hpp"

#include <string>
#include <vector>

namespace dsaddle {

struct EigenVerdict {
  double value = 0.0;
  /// "negative", "positive", "discrete:<i>", "cluster:<i>" or "none".
  std::string region;
  /// Distance to the nearest edge of the region, negative when outside.
  double slack = 0.0;
  bool inside = false;
};

struct ContainmentReport {
  bool pass = true;
  std::vector<EigenVerdict> verdicts;
  std::vector<Index> discrete_counts;
  std::vector<Index> cluster_counts;
  Index outside = 0;
  double min_slack = 0.0;
  std::vector<std::string> messages;
};

/// Checks every eigenvalue against the prediction. Discrete values claim
/// the eigenvalues within cluster_tol * max(1, |value|) nearest to them, up
/// to their multiplicity; the rest must fall in a cluster (when clusters are
/// predicted) or in one of the two intervals, each closed end widened by
/// tol * max(1, |endpoint|). Discrete and cluster counts must match exactly.
ContainmentReport verify_containment(const Vector& spectrum, const BoundIntervals& bounds,
                                     double tol = 1e-9, double cluster_tol = 1e-8);

}  // namespace dsaddle
