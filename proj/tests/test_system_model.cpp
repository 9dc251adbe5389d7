#include "dsaddle/errors.hpp"
#include "dsaddle/fem.hpp"
#include "dsaddle/problems.hpp"
#include "dsaddle/system_model.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dsaddle;
using dsaddle::testing::Regularization;

namespace {

DoubleSaddleSystem small_system(std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  return random_system({6, 4, 3}, seed, dsaddle::testing::random_extremes(rng, Regularization::both));
}

}  // namespace

TEST(SystemModel, DimensionsComeFromBlocks) {
  const auto s = small_system();
  EXPECT_EQ(s.dims(), (Dims{6, 4, 3}));
  EXPECT_EQ(s.dims().total(), 13);
}

TEST(SystemModel, ShapeErrorNamesTheBlock) {
  const DenseMatrix a = DenseMatrix::Identity(4, 4);
  const DenseMatrix b = DenseMatrix::Ones(3, 4);
  const DenseMatrix c = DenseMatrix::Ones(2, 2);  // should be 2 x 3
  const DenseMatrix d = DenseMatrix::Zero(3, 3);
  const DenseMatrix e = DenseMatrix::Zero(2, 2);
  try {
    DoubleSaddleSystem::from_dense(a, b, c, d, e);
    FAIL() << "expected StructuralError";
  } catch (const StructuralError& err) {
    EXPECT_NE(std::string(err.what()).find("C"), std::string::npos) << err.what();
  }
}

TEST(SystemModel, RejectsMoreRowsThanColumns) {
  EXPECT_THROW(DoubleSaddleSystem::from_dense(DenseMatrix::Identity(2, 2), DenseMatrix::Ones(3, 2),
                                              DenseMatrix::Ones(1, 3), DenseMatrix::Zero(3, 3),
                                              DenseMatrix::Zero(1, 1)),
               StructuralError);
}

TEST(SystemModel, StandardAssemblyMatchesBlockPlacement) {
  const auto s = small_system();
  const AssembledMatrix k = assemble(s);
  EXPECT_EQ(k.layout, Layout::standard);
  EXPECT_EQ(k.block_offsets, (std::array<Index, 3>{0, 6, 10}));
  EXPECT_EQ((k.data.to_dense() - oracle::assemble_dense(s)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SystemModel, LayoutsArePermutationsOfStandard) {
  const auto dc = poisson_distributed(0.25, 1e-2);
  const auto& s = dc.flipped;
  const DenseMatrix ref = assemble(s).data.to_dense();
  for (Layout layout : {Layout::flipped, Layout::two_by_two}) {
    const DenseMatrix k = assemble(s, layout).data.to_dense();
    const auto perm = layout_permutation(s.dims(), Layout::standard, layout);
    ASSERT_EQ(static_cast<Index>(perm.size()), s.dims().total());
    for (Index i = 0; i < k.rows(); ++i)
      for (Index j = 0; j < k.cols(); ++j)
        ASSERT_EQ(k(i, j), ref(perm[i], perm[j])) << to_string(layout) << " at " << i << "," << j;
  }
}

TEST(SystemModel, TwoByTwoWorksForRectangularBlocks) {
  const auto s = small_system();
  const DenseMatrix ref = assemble(s).data.to_dense();
  const DenseMatrix k = assemble(s, Layout::two_by_two).data.to_dense();
  const auto perm = layout_permutation(s.dims(), Layout::standard, Layout::two_by_two);
  for (Index i = 0; i < k.rows(); ++i)
    for (Index j = 0; j < k.cols(); ++j) ASSERT_EQ(k(i, j), ref(perm[i], perm[j]));
}

TEST(SystemModel, FlippedNeedsSquareBlocks) {
  EXPECT_THROW(assemble(small_system(), Layout::flipped), UnsupportedLayoutError);
}

TEST(SystemModel, SparseBlocksAssembleSparse) {
  const auto dc = poisson_distributed(0.125, 1e-3);
  EXPECT_TRUE(assemble(dc.flipped).data.is_sparse());
  EXPECT_FALSE(assemble(small_system()).data.is_sparse());
}

TEST(SystemModel, LayoutNames) {
  EXPECT_EQ(layout_from_string("two-by-two"), Layout::two_by_two);
  EXPECT_EQ(layout_from_string("flipped"), Layout::flipped);
  EXPECT_EQ(to_string(Layout::standard), "standard");
  EXPECT_THROW(layout_from_string("diagonal"), UnsupportedLayoutError);
}

TEST(SystemModel, ValidSystemPassesEveryCheck) {
  const ValidationReport r = validate(small_system());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.b_full_row_rank);
  EXPECT_TRUE(r.c_full_row_rank);
  EXPECT_EQ(r.c_nullity_k, 0);
  EXPECT_TRUE(r.messages.empty());
}

TEST(SystemModel, AsymmetricAIsReported) {
  const auto s = small_system();
  DenseMatrix a = s.a().to_dense();
  a(0, 1) += 1e-3;
  const auto bad = DoubleSaddleSystem::from_dense(a, s.b().to_dense(), s.c().to_dense(),
                                                  s.d().to_dense(), s.e().to_dense());
  const ValidationReport r = validate(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.symmetric_ok.a);
  EXPECT_FALSE(r.messages.empty());
}

TEST(SystemModel, IndefiniteAIsReported) {
  const auto s = small_system();
  DenseMatrix a = s.a().to_dense();
  a(0, 0) = -a.diagonal().maxCoeff();
  const auto bad = DoubleSaddleSystem::from_dense(a, s.b().to_dense(), s.c().to_dense(),
                                                  s.d().to_dense(), s.e().to_dense());
  const ValidationReport r = validate(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.definiteness_ok.a);
}

TEST(SystemModel, NullityOfCTransposeIsCounted) {
  std::mt19937_64 rng(5);
  const auto base = random_system({8, 6, 4}, 9, dsaddle::testing::random_extremes(rng, Regularization::d_zero));
  for (Index k : {0, 1, 2}) {
    const ValidationReport r = validate(dsaddle::testing::with_c_nullity(base, k));
    EXPECT_TRUE(r.ok()) << "k=" << k;
    EXPECT_EQ(r.c_nullity_k, k);
    EXPECT_EQ(r.c_full_row_rank, k == 0);
  }
}

TEST(SystemModel, RankDeficientCWithoutEIsNotDefinite) {
  std::mt19937_64 rng(6);
  const auto base = random_system({8, 6, 4}, 2, dsaddle::testing::random_extremes(rng, Regularization::none));
  const auto deficient = dsaddle::testing::with_c_nullity(base, 1);
  const auto s = DoubleSaddleSystem::from_dense(
      deficient.a().to_dense(), deficient.b().to_dense(), deficient.c().to_dense(),
      deficient.d().to_dense(), DenseMatrix::Zero(4, 4));
  const ValidationReport r = validate(s);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.schur_definite[1]);
  EXPECT_FALSE(r.kernel_conditions[2]);
}

TEST(SystemModel, UnregularizedDropsDAndE) {
  const auto s = unregularized(small_system());
  EXPECT_TRUE(s.d().is_zero());
  EXPECT_TRUE(s.e().is_zero());
  EXPECT_EQ(s.dims(), (Dims{6, 4, 3}));
}
