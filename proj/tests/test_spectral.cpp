#include "dsaddle/errors.hpp"
#include "dsaddle/fem.hpp"
#include "dsaddle/problems.hpp"
#include "dsaddle/spectral.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace dsaddle;
using dsaddle::testing::Regularization;

TEST(Spectral, SingularValuesMatchJacobiSvd) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  DenseMatrix m(5, 9);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  const ExtremePair ours = extremal_svals(StoredMatrix(m));
  const ExtremePair ref = oracle::svd_extremes(m);
  EXPECT_NEAR(ours.min, ref.min, 1e-12 * ref.max);
  EXPECT_NEAR(ours.max, ref.max, 1e-12 * ref.max);
}

TEST(Spectral, RankDeficientMatrixHasZeroSmallestSingularValue) {
  DenseMatrix m(3, 4);
  m << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1;
  EXPECT_EQ(extremal_svals(StoredMatrix(m)).min, 0.0);
}

TEST(Spectral, SingularValuesNeedWideMatrix) {
  EXPECT_THROW(extremal_svals(StoredMatrix(DenseMatrix::Ones(4, 2))), StructuralError);
}

TEST(Spectral, LanczosAgreesWithDenseSolver) {
  const FemDiscretization fem = q1_discretize(1.0 / 16);
  const StoredMatrix k(SparseMatrix(fem.stiffness + fem.mass));
  SpectralOptions lanczos;
  lanczos.dense_cutoff = 0;
  const ExtremePair dense = extremal_eigs(k.to_dense());
  const ExtremePair iter = extremal_eigs(k, lanczos);
  EXPECT_NEAR(iter.min, dense.min, 1e-9 * dense.max);
  EXPECT_NEAR(iter.max, dense.max, 1e-9 * dense.max);
}

TEST(Spectral, LanczosReportsNonConvergence) {
  const FemDiscretization fem = q1_discretize(1.0 / 16);
  SpectralOptions opts;
  opts.dense_cutoff = 0;
  opts.lanczos_max_iter = 3;
  opts.eig_tol = 1e-14;
  EXPECT_THROW(extremal_eigs(StoredMatrix(SparseMatrix(fem.stiffness)), opts), ConvergenceError);
}

TEST(Spectral, FullSpectrumRespectsOracleCutoff) {
  SpectralOptions opts;
  opts.oracle_cutoff = 4;
  EXPECT_THROW(full_spectrum(DenseMatrix(DenseMatrix::Identity(5, 5)), opts), OversizeError);
  EXPECT_EQ(full_spectrum(DenseMatrix(DenseMatrix::Identity(4, 4)), opts).size(), 4);
}

TEST(Spectral, InertiaOfSaddleMatrices) {
  std::mt19937_64 rng(2);
  for (auto reg : {Regularization::both, Regularization::d_zero, Regularization::e_zero,
                   Regularization::none}) {
    const auto s = dsaddle::testing::random_valid_system(rng, reg);
    const Dims d = s.dims();
    const DenseMatrix k = oracle::assemble_dense(s);
    const Inertia in = inertia(k);
    EXPECT_EQ(in, (Inertia{d.n + d.p, d.m, 0}));
    Index pos = 0;
    for (double v : oracle::general_eigenvalues(k)) pos += v > 0.0;
    EXPECT_EQ(pos, d.n + d.p);
  }
}

TEST(Spectral, InertiaCountsZeroEigenvalues) {
  DenseMatrix m = DenseMatrix::Zero(4, 4);
  m(0, 0) = 2.0;
  m(1, 1) = -1.0;
  m(2, 3) = m(3, 2) = 1.0;  // eigenvalues +-1
  EXPECT_EQ(inertia(m), (Inertia{2, 2, 0}));
  m(0, 0) = 0.0;
  Inertia unused;
  EXPECT_FALSE(inertia_by_factorization(m, 1e-11, unused));
  EXPECT_EQ(inertia(m), (Inertia{1, 2, 1}));
}

TEST(Spectral, BlockExtremesOfRandomSystemAreTheRequestedOnes) {
  std::mt19937_64 rng(3);
  const BlockExtremes want = dsaddle::testing::random_extremes(rng, Regularization::both);
  const auto s = random_system({12, 8, 5}, 4, want);
  const BlockExtremes got = block_extremes(s);
  const double tol = 1e-10;
  EXPECT_NEAR(got.mu_min_a, want.mu_min_a, tol * want.mu_max_a);
  EXPECT_NEAR(got.mu_max_a, want.mu_max_a, tol * want.mu_max_a);
  EXPECT_NEAR(got.sigma_min_b, want.sigma_min_b, tol * want.sigma_max_b);
  EXPECT_NEAR(got.sigma_max_b, want.sigma_max_b, tol * want.sigma_max_b);
  EXPECT_NEAR(got.sigma_min_c, want.sigma_min_c, tol * want.sigma_max_c);
  EXPECT_NEAR(got.sigma_max_c, want.sigma_max_c, tol * want.sigma_max_c);
  EXPECT_NEAR(got.mu_min_d, want.mu_min_d, tol * want.mu_max_d);
  EXPECT_NEAR(got.mu_max_d, want.mu_max_d, tol * want.mu_max_d);
  EXPECT_NEAR(got.mu_min_e, want.mu_min_e, tol * want.mu_max_e);
  EXPECT_NEAR(got.mu_max_e, want.mu_max_e, tol * want.mu_max_e);
}

TEST(Spectral, BlockExtremesCheck) {
  BlockExtremes x{4, 1, 2, 1, 2, 1, 1, 0, 1, 0};
  EXPECT_NO_THROW(x.check());
  x.mu_min_a = 0.0;
  EXPECT_THROW(x.check(), ParameterError);
  x.mu_min_a = 1.0;
  x.sigma_min_c = 3.0;
  EXPECT_THROW(x.check(), ParameterError);
}

TEST(Spectral, SchurComplementsMatchExplicitInverses) {
  std::mt19937_64 rng(4);
  const auto s = dsaddle::testing::random_valid_system(rng, Regularization::both);
  const SchurPair ours = schur_complements(s);
  const auto [s1, s2] = oracle::schur_by_inverse(s);
  EXPECT_LE((ours.s1 - s1).norm(), 1e-10 * s1.norm());
  EXPECT_LE((ours.s2 - s2).norm(), 1e-10 * s2.norm());

  const DenseMatrix b = s.b().to_dense();
  const DenseMatrix bab = b * s.a().to_dense().inverse() * b.transpose();
  const auto eta_d = oracle::qz_eigenvalues(s.d().to_dense(), bab);
  EXPECT_NEAR(ours.eta_d, eta_d.back(), 1e-9 * std::max(1.0, eta_d.back()));
}

TEST(Spectral, EtaIsZeroForZeroBlocksAndInfiniteForRankDeficiency) {
  std::mt19937_64 rng(5);
  const auto s = dsaddle::testing::random_valid_system(rng, Regularization::none);
  const SchurPair none = schur_complements(s);
  EXPECT_EQ(none.eta_d, 0.0);
  EXPECT_EQ(none.eta_e, 0.0);

  const auto base = random_system({8, 6, 4}, 1, dsaddle::testing::random_extremes(rng, Regularization::d_zero));
  const SchurPair deficient = schur_complements(dsaddle::testing::with_c_nullity(base, 1));
  EXPECT_EQ(deficient.eta_e, std::numeric_limits<double>::infinity());
}

TEST(Spectral, GeneralizedExtremesAgreeWithQz) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  DenseMatrix g(6, 6), h(6, 6);
  for (Index i = 0; i < 36; ++i) {
    g.data()[i] = normal(rng);
    h.data()[i] = normal(rng);
  }
  const DenseMatrix lhs = g * g.transpose();
  const DenseMatrix rhs = h * h.transpose() + DenseMatrix::Identity(6, 6);
  const auto ref = oracle::qz_eigenvalues(lhs, rhs);
  const ExtremePair ours = generalized_extremes(lhs, rhs);
  EXPECT_NEAR(ours.min, ref.front(), 1e-10 * ref.back());
  EXPECT_NEAR(ours.max, ref.back(), 1e-10 * ref.back());
  EXPECT_THROW(generalized_extremes(lhs, -rhs), DefinitenessError);
}

TEST(Spectral, SpdFunctionComputesInverseSquareRoot) {
  DenseMatrix m(2, 2);
  m << 4, 1, 1, 3;
  const DenseMatrix r = spd_function(m, [](double x) { return 1.0 / std::sqrt(x); });
  EXPECT_LE((r * m * r - DenseMatrix::Identity(2, 2)).norm(), 1e-14);
  EXPECT_THROW(spd_function(-m, [](double x) { return x; }), DefinitenessError);
}

TEST(Spectral, NumericalRank) {
  DenseMatrix m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  EXPECT_EQ(numerical_rank(m, 1e-10), 2);
  EXPECT_EQ(numerical_rank(DenseMatrix::Zero(2, 2), 1e-10), 0);
}
