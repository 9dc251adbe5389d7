#include "dsaddle/errors.hpp"
#include "dsaddle/fem.hpp"
#include "dsaddle/precond.hpp"
#include "dsaddle/problems.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dsaddle;
using dsaddle::testing::Regularization;

namespace {

DoubleSaddleSystem sample(Regularization reg, std::uint64_t seed = 31) {
  std::mt19937_64 rng(seed);
  return dsaddle::testing::random_valid_system(rng, reg, 12, 8, 5);
}

}  // namespace

TEST(Precond, ExactBlocksAreAAndSchurComplements) {
  const auto s = sample(Regularization::both);
  const auto blocks = exact_blocks(s);
  const auto [s1, s2] = oracle::schur_by_inverse(s);
  EXPECT_EQ((blocks[0] - s.a().to_dense()).norm(), 0.0);
  EXPECT_LE((blocks[1] - s1).norm(), 1e-10 * s1.norm());
  EXPECT_LE((blocks[2] - s2).norm(), 1e-10 * s2.norm());
}

TEST(Precond, ApplyAndApplyInverseAreInverses) {
  const auto s = sample(Regularization::both);
  const PreconditionerOperator m = build_exact(s);
  EXPECT_EQ(m.dims(), s.dims());
  Vector v = Vector::LinSpaced(s.dims().total(), -1.0, 2.0);
  EXPECT_LE((m.apply_inverse(m.apply(v)) - v).norm(), 1e-10 * v.norm());
  EXPECT_THROW(m.apply(Vector::Ones(3)), StructuralError);
}

TEST(Precond, OperatorRejectsIndefiniteBlockByName) {
  std::array<DenseMatrix, 3> blocks{DenseMatrix::Identity(2, 2), -DenseMatrix::Identity(2, 2),
                                    DenseMatrix::Identity(1, 1)};
  try {
    PreconditionerOperator op(blocks, "bad");
    FAIL() << "expected DefinitenessError";
  } catch (const DefinitenessError& e) {
    EXPECT_NE(std::string(e.what()).find("S1"), std::string::npos) << e.what();
  }
}

TEST(Precond, SplitMatrixHasTheSpectrumOfPreconditionedK) {
  const auto s = sample(Regularization::both);
  const PreconditionerOperator m = build_approx(s, PreconditionerStrategy::from_name("jacobi"));
  const SplitPreconditioned split = split_preconditioned_matrix(s, m);
  const auto ours = oracle::general_eigenvalues(split.matrix);
  const auto ref = oracle::qz_eigenvalues(oracle::assemble_dense(s), m.dense());
  ASSERT_EQ(ours.size(), ref.size());
  for (std::size_t i = 0; i < ours.size(); ++i)
    EXPECT_NEAR(ours[i], ref[i], 1e-8 * std::max(1.0, std::abs(ref[i])));
}

TEST(Precond, SplitBlocksSatisfyBlockwiseBounds) {
  const auto s = sample(Regularization::both, 33);
  const PreconditionerOperator m = build_approx(s, PreconditionerStrategy::from_name("jacobi"));
  const SplitPreconditioned split = split_preconditioned_matrix(s, m);
  const MeasuredConstants mc = measured_constants(s, m);
  const SchurPair schur = schur_complements(s);
  const auto q0 = extremal_eigs(split.q0());
  EXPECT_GE(q0.min, mc.consts.alpha0 * (1 - 1e-9));
  EXPECT_LE(q0.max, mc.consts.beta0 * (1 + 1e-9));
  const auto b = oracle::svd_extremes(split.b());
  EXPECT_LE(b.max, std::sqrt(mc.consts.beta0 * mc.consts.beta1) * (1 + 1e-9));
  EXPECT_GE(b.min, std::sqrt(mc.consts.alpha0 * mc.consts.alpha1 / (1 + schur.eta_d)) * (1 - 1e-9));
}

TEST(Precond, StrategyNames) {
  EXPECT_TRUE(PreconditionerStrategy::from_name("exact").all_exact());
  const auto j = PreconditionerStrategy::from_name("jacobi");
  for (const auto& b : j.blocks) EXPECT_EQ(b.kind, BlockKind::jacobi);
  const auto pw = PreconditionerStrategy::from_name("pearson-wathen");
  EXPECT_EQ(pw.blocks[0].kind, BlockKind::exact);
  EXPECT_EQ(pw.blocks[2].kind, BlockKind::pearson_wathen);
  EXPECT_EQ(PreconditionerStrategy::from_name("drop-term").blocks[2].kind, BlockKind::drop_term);
  EXPECT_THROW(PreconditionerStrategy::from_name("ilu"), ParameterError);
  EXPECT_EQ(to_string(BlockKind::identity_scaled), "identity-scaled");
}

TEST(Precond, ScaledBlocksGiveReciprocalConstants) {
  const auto s = sample(Regularization::both);
  PreconditionerStrategy strat;
  strat.name = "scaled";
  strat.blocks = {BlockStrategy::scaled(2.0), BlockStrategy::scaled(0.5), BlockStrategy::exact()};
  const MeasuredConstants mc = measured_constants(s, build_approx(s, strat));
  EXPECT_NEAR(mc.blocks[0].raw_min, 0.5, 1e-10);
  EXPECT_NEAR(mc.blocks[0].raw_max, 0.5, 1e-10);
  EXPECT_NEAR(mc.consts.alpha0, 0.5, 1e-10);
  EXPECT_EQ(mc.consts.beta0, 1.0);
  EXPECT_NEAR(mc.consts.beta1, 2.0, 1e-10);
  EXPECT_EQ(mc.consts.alpha1, 1.0);
  EXPECT_NEAR(mc.consts.alpha2, 1.0, 1e-10);
}

TEST(Precond, EquivalenceClampsAndReportsScale) {
  DenseMatrix exact = DenseMatrix::Identity(3, 3);
  const Equivalence e = equivalence_constants(exact, 4.0 * exact);
  EXPECT_NEAR(e.raw_min, 0.25, 1e-15);
  EXPECT_NEAR(e.raw_max, 0.25, 1e-15);
  EXPECT_NEAR(e.alpha, 0.25, 1e-15);
  EXPECT_EQ(e.beta, 1.0);
  EXPECT_NEAR(e.scale, 0.25, 1e-15);
}

TEST(Precond, PearsonWathenOnDistributedControl) {
  const auto dc = poisson_distributed(0.125, 1e-3);
  const auto strat = PreconditionerStrategy::from_name("pearson-wathen");
  const PreconditionerOperator m = build_approx(dc.flipped, strat);
  const MeasuredConstants mc = measured_constants(dc.flipped, m);
  EXPECT_GE(mc.blocks[2].raw_min, 0.5 - 1e-6);
  EXPECT_LE(mc.blocks[2].raw_max, 1.0 + 1e-6);
  const auto certified = certified_constants(strat);
  ASSERT_TRUE(certified.has_value());
  EXPECT_EQ(certified->alpha2, 0.5);
  EXPECT_EQ(certified->beta2, 1.0);
  EXPECT_FALSE(certified_constants(PreconditionerStrategy::from_name("jacobi")).has_value());
}

TEST(Precond, PearsonWathenNeedsTheControlStructure) {
  EXPECT_THROW(build_approx(sample(Regularization::d_zero),
                            PreconditionerStrategy::from_name("pearson-wathen")),
               StrategyMismatchError);
}

TEST(Precond, DropTermNeedsDefiniteE) {
  EXPECT_THROW(build_approx(sample(Regularization::none), PreconditionerStrategy::from_name("drop-term")),
               DefinitenessError);
}

TEST(Precond, UserBlockMustHaveTheRightShape) {
  const auto s = sample(Regularization::both);
  PreconditionerStrategy strat;
  strat.name = "user";
  strat.blocks[0] = BlockStrategy::user(DenseMatrix::Identity(2, 2));
  EXPECT_THROW(build_approx(s, strat), StructuralError);
  strat.blocks[0] = BlockStrategy::user(DenseMatrix::Identity(s.dims().n, s.dims().n));
  EXPECT_NO_THROW(build_approx(s, strat));
}
