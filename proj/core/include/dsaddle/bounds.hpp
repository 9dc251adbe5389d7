#pragma once

#include "dsaddle/cubic.hpp"
#include "dsaddle/spectral.hpp"
#include "dsaddle/system_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dsaddle {

/// Closed interval unless one of the open flags is set.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  /// Membership with each closed endpoint widened by tol * max(1, |endpoint|).
  /// Open endpoints are never widened.
  bool contains(double x, double tol = 0.0) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct DiscreteEigenvalue {
  double value = 0.0;
  Index multiplicity = 0;
};

/// An interval known to hold exactly `count` eigenvalues.
struct ClusterInterval {
  Interval range;
  Index count = 0;
};

struct BoundIntervals {
  Interval negative;
  Interval positive;
  /// Eigenvalues known exactly, with multiplicities.
  std::vector<DiscreteEigenvalue> discrete;
  std::vector<ClusterInterval> clusters;
  /// True when `discrete` alone describes the whole spectrum.
  bool discrete_only = false;
  /// An interior endpoint collapsed to zero because B or C is rank deficient.
  bool degenerate_interior = false;
  std::string provenance;
  /// The cheaper upper negative estimate -alpha0*alpha1/beta0 (inexact case only).
  std::optional<double> simplified_negative_upper;
  std::vector<std::string> warnings;

  /// Sum of discrete multiplicities and cluster counts.
  Index declared_count() const;
};

/// Golden ratio (1 + sqrt 5) / 2.
double golden_ratio();

/// Roots of lambda^3 - lambda^2 - 2 lambda + 1.
ClassifiedRoots zeta_roots();

/// Intervals for the eigenvalues of K built from the block extremes alone.
/// A sigma_min of B or C below rank_tol * sigma_max makes the matching
/// interior endpoint 0 and sets degenerate_interior.
BoundIntervals bounds_unpreconditioned(const BlockExtremes& x, double rank_tol = 1e-10);

/// The same intervals with the D and E extremes taken as zero.
BoundIntervals bounds_k0(const BlockExtremes& x, double rank_tol = 1e-10);

enum class ExactCase { d0_e0, d0_e_nonzero, d_nonzero_e0, d_nonzero_e_nonzero };

std::string to_string(ExactCase c);

/// Picks the case from which of D and E are identically zero.
ExactCase exact_case_for(const DoubleSaddleSystem& system);

/// Spectrum of M^{-1} K for the exact block-diagonal preconditioner. The
/// nullity k of C^T only matters for d0_e_nonzero. Throws ParameterError
/// when k is outside [0, p] or the dimensions are not n >= m >= p.
BoundIntervals bounds_precond_exact(ExactCase c, Dims dims, Index nullity_k = 0);

/// Spectral-equivalence constants: Lambda(At^{-1} A) in [alpha0, beta0],
/// Lambda(S1t^{-1} S1) in [alpha1, beta1], Lambda(S2t^{-1} S2) in [alpha2, beta2].
struct EquivalenceConstants {
  double alpha0 = 1.0, beta0 = 1.0;
  double alpha1 = 1.0, beta1 = 1.0;
  double alpha2 = 1.0, beta2 = 1.0;

  /// Throws ParameterError unless 0 < alpha_i <= 1 <= beta_i.
  void check() const;
};

struct InexactInput {
  EquivalenceConstants consts;
  double eta_d = 0.0;
  double eta_e = 0.0;
  bool d_zero = false;
  bool e_zero = false;
};

/// Intervals for the eigenvalues of Mt^{-1/2} K Mt^{-1/2}. A zero D (E)
/// drops the corresponding terms and forces eta_D (eta_E) to zero. An
/// infinite eta collapses the matching interior endpoint to 0.
BoundIntervals bounds_precond_inexact(const InexactInput& in);

}  // namespace dsaddle
