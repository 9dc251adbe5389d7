#pragma once

namespace dsaddle {

/// Monic cubic lambda^3 + c2 lambda^2 + c1 lambda + c0.
struct CubicPoly {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double operator()(double x) const { return ((x + c2) * x + c1) * x + c0; }
  double derivative(double x) const { return (3.0 * x + 2.0 * c2) * x + c1; }
};

/// Characteristic polynomial of [[a, b, 0], [b, -d, c], [0, c, e]]:
///
///   lambda^3 + (d - a - e) lambda^2 + (ae - ad - de - b^2 - c^2) lambda
///            + (ade + a c^2 + b^2 e)
///
/// Requires a > 0, d >= 0, e >= 0, d + b^2/a > 0 and e + c^2/(d + b^2/a) > 0;
/// under these the cubic has one negative and two positive roots.
/// Throws ParameterError naming the first failed condition.
CubicPoly cubic_from_params(double a, double b, double c, double d, double e);

struct ClassifiedRoots {
  double neg = 0.0;
  double pos_min = 0.0;
  double pos_max = 0.0;
};

/// Roots by the trigonometric method, each polished by one Newton step.
/// Throws ClassificationError when the roots are not real or the sign
/// pattern is not one negative and two positive.
ClassifiedRoots solve_classified(const CubicPoly& cubic);

/// Shorthand for solve_classified(cubic_from_params(a, b, c, d, e)).
ClassifiedRoots classified_roots(double a, double b, double c, double d, double e);

}  // namespace dsaddle
