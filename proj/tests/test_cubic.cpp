#include "dsaddle/bounds.hpp"
#include "dsaddle/cubic.hpp"
#include "dsaddle/errors.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace dsaddle;

namespace {

double relative_residual(const CubicPoly& p, double x) {
  const double scale = std::abs(x * x * x) + std::abs(p.c2 * x * x) + std::abs(p.c1 * x) +
                       std::abs(p.c0);
  return std::abs(p(x)) / scale;
}

}  // namespace

TEST(Cubic, CoefficientsMatchThreeByThreeCharacteristicPolynomial) {
  const double a = 2.0, b = 0.7, c = 1.3, d = 0.4, e = 0.9;
  Eigen::Matrix3d m;
  m << a, b, 0, b, -d, c, 0, c, e;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
  const CubicPoly p = cubic_from_params(a, b, c, d, e);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(p(es.eigenvalues()(i)), 0.0, 1e-12);

  const ClassifiedRoots r = solve_classified(p);
  EXPECT_NEAR(r.neg, es.eigenvalues()(0), 1e-13);
  EXPECT_NEAR(r.pos_min, es.eigenvalues()(1), 1e-13);
  EXPECT_NEAR(r.pos_max, es.eigenvalues()(2), 1e-13);
}

TEST(Cubic, UnitParametersGiveZetaRoots) {
  // lambda^3 - lambda^2 - 2 lambda + 1
  const CubicPoly p = cubic_from_params(1, 1, 1, 0, 0);
  EXPECT_DOUBLE_EQ(p.c2, -1.0);
  EXPECT_DOUBLE_EQ(p.c1, -2.0);
  EXPECT_DOUBLE_EQ(p.c0, 1.0);
  const ClassifiedRoots z = zeta_roots();
  EXPECT_NEAR(z.neg, -1.2469796037174670, 1e-15);
  EXPECT_NEAR(z.pos_min, 0.44504186791262884, 1e-15);
  EXPECT_NEAR(z.pos_max, 1.8019377358048383, 1e-15);
}

TEST(Cubic, MatchesCompanionOracleOnRandomTuples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> log10(-2.0, 2.0);
  std::bernoulli_distribution zero(0.2);
  for (int t = 0; t < 300; ++t) {
    const double a = std::pow(10.0, log10(rng));
    const double b = std::pow(10.0, log10(rng));
    const double c = std::pow(10.0, log10(rng));
    const double d = zero(rng) ? 0.0 : std::pow(10.0, log10(rng));
    const double e = zero(rng) ? 0.0 : std::pow(10.0, log10(rng));
    const CubicPoly p = cubic_from_params(a, b, c, d, e);
    const ClassifiedRoots r = solve_classified(p);
    const auto ref = oracle::companion_roots(p);
    EXPECT_LT(r.neg, 0.0);
    EXPECT_GT(r.pos_min, 0.0);
    EXPECT_LE(r.pos_min, r.pos_max);
    EXPECT_NEAR(r.neg, ref[0], 1e-9 * std::max(1.0, std::abs(ref[0])));
    EXPECT_NEAR(r.pos_min, ref[1], 1e-9 * std::max(1.0, std::abs(ref[1])));
    EXPECT_NEAR(r.pos_max, ref[2], 1e-9 * std::max(1.0, std::abs(ref[2])));
    EXPECT_LE(relative_residual(p, r.neg), 1e-12);
    EXPECT_LE(relative_residual(p, r.pos_min), 1e-12);
    EXPECT_LE(relative_residual(p, r.pos_max), 1e-12);
  }
}

TEST(Cubic, RejectsInvalidParameters) {
  EXPECT_THROW(cubic_from_params(0.0, 1, 1, 0, 0), ParameterError);
  EXPECT_THROW(cubic_from_params(1, 1, 1, -0.1, 0), ParameterError);
  EXPECT_THROW(cubic_from_params(1, 1, 1, 0, -0.1), ParameterError);
  // d + b^2/a = 0
  EXPECT_THROW(cubic_from_params(1, 0, 1, 0, 0), ParameterError);
  // e + c^2/(d + b^2/a) = 0
  EXPECT_THROW(cubic_from_params(1, 1, 0, 0, 0), ParameterError);
}

TEST(Cubic, ErrorNamesTheFailedCondition) {
  try {
    cubic_from_params(-1.0, 1, 1, 0, 0);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("a"), std::string::npos);
  }
}

TEST(Cubic, ClassificationRejectsWrongSignPattern) {
  // (x-1)(x-2)(x-3): three positive roots
  EXPECT_THROW(solve_classified({-6.0, 11.0, -6.0}), ClassificationError);
  // x^3 + x: complex pair
  EXPECT_THROW(solve_classified({0.0, 1.0, 0.0}), ClassificationError);
  // (x+1)(x+2)(x-1): two negative roots
  EXPECT_THROW(solve_classified({2.0, -1.0, -2.0}), ClassificationError);
}

TEST(Cubic, DoubleRootStaysClassified) {
  // (x+1)(x-2)^2
  const ClassifiedRoots r = solve_classified({-3.0, 0.0, 4.0});
  EXPECT_NEAR(r.neg, -1.0, 1e-12);
  EXPECT_NEAR(r.pos_min, 2.0, 1e-7);
  EXPECT_NEAR(r.pos_max, 2.0, 1e-7);
}
