#include "dsaddle/cubic.hpp"

#include "dsaddle/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dsaddle {

namespace {

void require(bool ok, const char* condition) {
  if (!ok) throw ParameterError(std::string("cubic parameters violate ") + condition);
}

double newton_polish(const CubicPoly& f, double x) {
  const double slope = f.derivative(x);
  if (slope == 0.0) return x;
  const double next = x - f(x) / slope;
  return std::abs(f(next)) <= std::abs(f(x)) ? next : x;
}

}  // namespace

CubicPoly cubic_from_params(double a, double b, double c, double d, double e) {
  require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d) &&
              std::isfinite(e),
          "finiteness");
  require(a > 0.0, "a > 0");
  require(d >= 0.0, "d >= 0");
  require(e >= 0.0, "e >= 0");
  const double s1 = d + b * b / a;
  require(s1 > 0.0, "s1 = d + b^2/a > 0");
  const double s2 = e + c * c / s1;
  require(s2 > 0.0, "s2 = e + c^2/s1 > 0");
  CubicPoly out;
  out.c2 = d - a - e;
  out.c1 = a * e - a * d - d * e - b * b - c * c;
  out.c0 = a * d * e + a * c * c + b * b * e;
  return out;
}

ClassifiedRoots solve_classified(const CubicPoly& f) {
  // Depressed form t^3 + p t + q with lambda = t - c2/3.
  const double shift = f.c2 / 3.0;
  const double p = f.c1 - f.c2 * f.c2 / 3.0;
  const double q = 2.0 * f.c2 * f.c2 * f.c2 / 27.0 - f.c2 * f.c1 / 3.0 + f.c0;
  if (!(p < 0.0)) {
    std::ostringstream os;
    os << "cubic (" << f.c2 << ", " << f.c1 << ", " << f.c0
       << ") does not have three distinct real roots";
    throw ClassificationError(os.str());
  }
  const double radius = 2.0 * std::sqrt(-p / 3.0);
  double arg = 3.0 * q / (p * radius);
  if (std::abs(arg) > 1.0 + 1e-10) {
    std::ostringstream os;
    os << "cubic (" << f.c2 << ", " << f.c1 << ", " << f.c0 << ") has complex roots";
    throw ClassificationError(os.str());
  }
  arg = std::clamp(arg, -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  std::array<double, 3> roots{};
  for (int k = 0; k < 3; ++k) {
    const double t = radius * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
    roots[k] = newton_polish(f, t - shift);
  }
  std::sort(roots.begin(), roots.end());
  if (!(roots[0] < 0.0 && roots[1] > 0.0)) {
    std::ostringstream os;
    os << "cubic roots " << roots[0] << ", " << roots[1] << ", " << roots[2]
       << " are not one negative and two positive";
    throw ClassificationError(os.str());
  }
  return {roots[0], roots[1], roots[2]};
}

ClassifiedRoots classified_roots(double a, double b, double c, double d, double e) {
  return solve_classified(cubic_from_params(a, b, c, d, e));
}

}  // namespace dsaddle
