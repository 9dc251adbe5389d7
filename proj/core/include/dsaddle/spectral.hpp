#pragma once

#include "dsaddle/stored_matrix.hpp"
#include "dsaddle/system_model.hpp"

#include <cstdint>
#include <functional>
#include <limits>

namespace dsaddle {

struct SpectralOptions {
  Index dense_cutoff = kDenseCutoff;   ///< above this, extremal_eigs uses Lanczos
  Index oracle_cutoff = kDenseCutoff;  ///< full_spectrum refuses larger matrices
  double eig_tol = 1e-10;              ///< Lanczos certification, relative to ||M||
  double zero_tol = 1e-11;             ///< |lambda| <= zero_tol*||M|| counts as zero
  Index lanczos_max_iter = 600;
  std::uint64_t lanczos_seed = 0x5eed5eedULL;
};

struct ExtremePair {
  double min = 0.0;
  double max = 0.0;
};

/// Smallest and largest eigenvalue of a symmetric matrix.
ExtremePair extremal_eigs(const StoredMatrix& sym, const SpectralOptions& opts = {});
ExtremePair extremal_eigs(const DenseMatrix& sym);

/// Extremal singular values of an r x c matrix with r <= c; `min` is the
/// r-th largest singular value and may be zero.
ExtremePair extremal_svals(const StoredMatrix& mat);

/// Ascending eigenvalues of a symmetric matrix, dense decomposition.
Vector full_spectrum(const StoredMatrix& sym, const SpectralOptions& opts = {});
Vector full_spectrum(const DenseMatrix& sym, const SpectralOptions& opts = {});

struct Inertia {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;

  Index dim() const { return positive + negative + zero; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia through a Bunch-Kaufman LDL^T factorization; falls
/// back to counting eigenvalue signs when a pivot is numerically zero.
Inertia inertia(const StoredMatrix& sym, const SpectralOptions& opts = {});
Inertia inertia(const DenseMatrix& sym, const SpectralOptions& opts = {});

/// Inertia from the signs of the block-diagonal factor only. Returns false
/// when a pivot falls below zero_tol*||M|| and the counts cannot be trusted.
bool inertia_by_factorization(const DenseMatrix& sym, double zero_tol, Inertia& out);

/// Extremal eigen- and singular values of the five blocks.
struct BlockExtremes {
  double mu_max_a = 0.0, mu_min_a = 0.0;
  double sigma_max_b = 0.0, sigma_min_b = 0.0;
  double sigma_max_c = 0.0, sigma_min_c = 0.0;
  double mu_max_d = 0.0, mu_min_d = 0.0;
  double mu_max_e = 0.0, mu_min_e = 0.0;

  /// Throws ParameterError on any violated invariant.
  void check() const;

  /// Same extremes with D and E set to zero.
  BlockExtremes without_regularization() const;

  friend bool operator==(const BlockExtremes&, const BlockExtremes&) = default;
};

/// Semidefinite blocks get their tiny negative round-off clamped to zero.
BlockExtremes block_extremes(const DoubleSaddleSystem& system, const SpectralOptions& opts = {});

/// S1 = D + B A^{-1} B^T, S2 = E + C S1^{-1} C^T, and
/// eta_D = lambda_max((B A^{-1} B^T)^{-1} D), eta_E = lambda_max((C S1^{-1} C^T)^{-1} E).
/// An eta whose right-hand matrix is singular is +infinity.
struct SchurPair {
  DenseMatrix s1;
  DenseMatrix s2;
  double eta_d = 0.0;
  double eta_e = 0.0;
};

SchurPair schur_complements(const DoubleSaddleSystem& system, const Tolerances& tol = {});

/// Largest lambda with lhs v = lambda rhs v, rhs SPD (Cholesky reduction).
double max_generalized_eig(const DenseMatrix& lhs, const DenseMatrix& rhs);

/// Both ends of the spectrum of rhs^{-1} lhs, rhs SPD.
ExtremePair generalized_extremes(const DenseMatrix& lhs, const DenseMatrix& rhs);

/// Numerical rank from singular values relative to rank_tol * sigma_max.
Index numerical_rank(const DenseMatrix& mat, double rank_tol);

/// Symmetric function of a symmetric positive definite matrix, eigenvalues
/// floored at floor_rel * lambda_max before applying `fn`.
DenseMatrix spd_function(const DenseMatrix& spd, const std::function<double(double)>& fn,
                         double floor_rel = 1e-14);

using MatVec = std::function<Vector(const Vector&)>;

struct LanczosResult {
  ExtremePair values;
  Vector min_vector;
  Vector max_vector;
  Index iterations = 0;
};

/// Extremal eigenpairs of a symmetric operator by Lanczos with full
/// reorthogonalization. Each pair is certified by ||Av - lambda v|| <=
/// eig_tol * ||A||; otherwise ConvergenceError.
LanczosResult lanczos_extremes(const MatVec& op, Index dim, const SpectralOptions& opts = {});

}  // namespace dsaddle
