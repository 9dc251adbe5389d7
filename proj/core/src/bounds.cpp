#include "dsaddle/bounds.hpp"

#include "dsaddle/cubic.hpp"
#include "dsaddle/errors.hpp"

#include <cmath>
#include <sstream>

namespace dsaddle {

namespace {

// Upper end of the negative interval in both the unpreconditioned and the
// inexact case: the negative root of lambda^2 - top*lambda - coupling.
double negative_upper(double top, double coupling) {
  return (top - std::sqrt(top * top + 4.0 * coupling)) / 2.0;
}

bool is_degenerate(double sigma_min, double sigma_max, double rank_tol) {
  return sigma_min <= rank_tol * sigma_max;
}

}  // namespace

bool Interval::contains(double x, double tol) const {
  const double lo_slack = lo_open ? 0.0 : tol * std::max(1.0, std::abs(lo));
  const double hi_slack = hi_open ? 0.0 : tol * std::max(1.0, std::abs(hi));
  const bool above = lo_open ? x > lo : x >= lo - lo_slack;
  const bool below = hi_open ? x < hi : x <= hi + hi_slack;
  return above && below;
}

Index BoundIntervals::declared_count() const {
  Index total = 0;
  for (const auto& d : discrete) total += d.multiplicity;
  for (const auto& c : clusters) total += c.count;
  return total;
}

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

ClassifiedRoots zeta_roots() { return classified_roots(1.0, 1.0, 1.0, 0.0, 0.0); }

BoundIntervals bounds_unpreconditioned(const BlockExtremes& x, double rank_tol) {
  x.check();
  BoundIntervals out;
  out.provenance = "unpreconditioned";

  const bool b_degenerate = is_degenerate(x.sigma_min_b, x.sigma_max_b, rank_tol);
  const bool c_degenerate = is_degenerate(x.sigma_min_c, x.sigma_max_c, rank_tol);

  const ClassifiedRoots r =
      classified_roots(x.mu_min_a, x.sigma_max_b, x.sigma_max_c, x.mu_max_d, x.mu_min_e);
  const ClassifiedRoots q =
      classified_roots(x.mu_max_a, x.sigma_max_b, x.sigma_max_c, x.mu_min_d, x.mu_max_e);

  out.negative.lo = r.neg;
  if (b_degenerate) {
    out.negative.hi = 0.0;
    out.degenerate_interior = true;
    out.warnings.push_back("B is rank deficient: upper negative bound reported as 0");
  } else {
    out.negative.hi = negative_upper(x.mu_max_a, x.sigma_min_b * x.sigma_min_b);
  }

  if (c_degenerate) {
    out.positive.lo = 0.0;
    out.degenerate_interior = true;
    out.warnings.push_back("C is rank deficient: lower positive bound reported as 0");
  } else {
    out.positive.lo =
        classified_roots(x.mu_min_a, x.sigma_max_b, x.sigma_min_c, x.mu_max_d, 0.0).pos_min;
  }
  out.positive.hi = q.pos_max;
  return out;
}

BoundIntervals bounds_k0(const BlockExtremes& x, double rank_tol) {
  BoundIntervals out = bounds_unpreconditioned(x.without_regularization(), rank_tol);
  out.provenance = "unpreconditioned-unregularized";
  return out;
}

std::string to_string(ExactCase c) {
  switch (c) {
    case ExactCase::d0_e0:
      return "d0-e0";
    case ExactCase::d0_e_nonzero:
      return "d0-e";
    case ExactCase::d_nonzero_e0:
      return "d-e0";
    case ExactCase::d_nonzero_e_nonzero:
      return "d-e";
  }
  return "unknown";
}

ExactCase exact_case_for(const DoubleSaddleSystem& system) {
  const bool d0 = system.d().is_zero();
  const bool e0 = system.e().is_zero();
  if (d0) return e0 ? ExactCase::d0_e0 : ExactCase::d0_e_nonzero;
  return e0 ? ExactCase::d_nonzero_e0 : ExactCase::d_nonzero_e_nonzero;
}

BoundIntervals bounds_precond_exact(ExactCase c, Dims dims, Index k) {
  if (!(dims.n >= dims.m && dims.m >= dims.p && dims.p >= 1))
    throw ParameterError("dimensions must satisfy n >= m >= p >= 1");
  if (c == ExactCase::d0_e_nonzero && (k < 0 || k > dims.p)) {
    std::ostringstream os;
    os << "nullity k = " << k << " is outside [0, p = " << dims.p << "]";
    throw ParameterError(os.str());
  }

  const double phi = golden_ratio();
  const ClassifiedRoots z = zeta_roots();
  BoundIntervals out;
  out.negative = {z.neg, 1.0 - phi};
  out.positive = {z.pos_min, z.pos_max};

  switch (c) {
    case ExactCase::d0_e0:
      out.provenance = "exact-d0-e0";
      out.discrete_only = true;
      out.discrete = {{z.neg, dims.p},        {1.0 - phi, dims.m - dims.p},
                      {z.pos_min, dims.p},    {1.0, dims.n - dims.m},
                      {phi, dims.m - dims.p}, {z.pos_max, dims.p}};
      break;
    case ExactCase::d0_e_nonzero: {
      out.provenance = "exact-d0";
      const Index rest = dims.p - k;
      out.discrete = {{1.0 - phi, dims.m - dims.p + k},
                      {1.0, dims.n - dims.m + k},
                      {phi, dims.m - dims.p + k}};
      out.clusters = {{{z.neg, 1.0 - phi, false, true}, rest},
                      {{z.pos_min, 1.0, false, true}, rest},
                      {{phi, z.pos_max, true, false}, rest}};
      break;
    }
    case ExactCase::d_nonzero_e0:
    case ExactCase::d_nonzero_e_nonzero:
      out.provenance = "exact-d";
      out.negative = {-phi, 1.0 - phi};
      break;
  }
  return out;
}

void EquivalenceConstants::check() const {
  const double alphas[3] = {alpha0, alpha1, alpha2};
  const double betas[3] = {beta0, beta1, beta2};
  for (int i = 0; i < 3; ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] <= 1.0 && betas[i] >= 1.0 && std::isfinite(betas[i]))) {
      std::ostringstream os;
      os << "equivalence constants (alpha" << i << ", beta" << i << ") = (" << alphas[i] << ", "
         << betas[i] << ") violate 0 < alpha <= 1 <= beta";
      throw ParameterError(os.str());
    }
  }
}

BoundIntervals bounds_precond_inexact(const InexactInput& in) {
  const EquivalenceConstants& k = in.consts;
  k.check();
  const double eta_d = in.d_zero ? 0.0 : in.eta_d;
  const double eta_e = in.e_zero ? 0.0 : in.eta_e;
  if (!(eta_d >= 0.0) || !(eta_e >= 0.0))
    throw ParameterError("eta_D and eta_E must be nonnegative");

  const double d_top = in.d_zero ? 0.0 : k.beta1;
  const double e_top = in.e_zero ? 0.0 : k.beta2;
  const double b_max = std::sqrt(k.beta0 * k.beta1);
  const double c_max = std::sqrt(k.beta1 * k.beta2);

  BoundIntervals out;
  out.provenance = "inexact";
  out.negative.lo = classified_roots(k.alpha0, b_max, c_max, d_top, 0.0).neg;
  if (std::isfinite(eta_d)) {
    out.negative.hi = negative_upper(k.beta0, k.alpha0 * k.alpha1 / (1.0 + eta_d));
  } else {
    out.negative.hi = 0.0;
    out.degenerate_interior = true;
    out.warnings.push_back("eta_D is infinite: upper negative bound reported as 0");
  }

  if (std::isfinite(eta_e)) {
    const double c_min = std::sqrt(k.alpha1 * k.alpha2 / (1.0 + eta_e));
    out.positive.lo = classified_roots(k.alpha0, b_max, c_min, d_top, 0.0).pos_min;
  } else {
    out.positive.lo = 0.0;
    out.degenerate_interior = true;
    out.warnings.push_back("eta_E is infinite: lower positive bound reported as 0");
  }
  out.positive.hi = classified_roots(k.beta0, b_max, c_max, 0.0, e_top).pos_max;
  out.simplified_negative_upper = -k.alpha0 * k.alpha1 / k.beta0;
  return out;
}

}  // namespace dsaddle
