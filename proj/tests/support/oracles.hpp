#pragma once

// Reference computations for the tests. Each one takes a different numerical
// route from the library code it checks: companion matrices instead of the
// trigonometric cubic formula, nonsymmetric or QZ eigensolvers instead of the
// symmetric ones, explicit inverses instead of Cholesky solves.

#include "dsaddle/cubic.hpp"
#include "dsaddle/spectral.hpp"
#include "dsaddle/system_model.hpp"

#include <random>
#include <vector>

namespace dsaddle::oracle {

/// Real parts of the companion-matrix eigenvalues, ascending. `max_imag`
/// receives the largest imaginary part seen.
std::vector<double> companion_roots(const CubicPoly& cubic, double* max_imag = nullptr);

/// Extremal singular values (the min is the r-th largest, r = rows).
ExtremePair svd_extremes(const DenseMatrix& mat);

/// Eigenvalues of a symmetric matrix through the general (nonsymmetric)
/// eigensolver, ascending.
std::vector<double> general_eigenvalues(const DenseMatrix& mat);

/// Eigenvalues of M^{-1} K through the QZ algorithm, ascending.
std::vector<double> qz_eigenvalues(const DenseMatrix& k, const DenseMatrix& m);

/// K placed block by block, standard ordering.
DenseMatrix assemble_dense(const DoubleSaddleSystem& system);

/// S1 and S2 from explicit LU inverses.
std::pair<DenseMatrix, DenseMatrix> schur_by_inverse(const DoubleSaddleSystem& system);

/// Number of entries of `values` with |v - target| <= tol.
Index count_near(const std::vector<double>& values, double target, double tol);

}  // namespace dsaddle::oracle

namespace dsaddle::testing {

enum class Regularization { both, d_zero, e_zero, none };

/// Dimensions with n >= m >= p >= 1 and n <= max_n, m <= max_m, p <= max_p.
Dims random_dims(std::mt19937_64& rng, Index max_n, Index max_m, Index max_p);

/// Well-separated extremes with full-rank B and C; D and E zeroed as requested.
BlockExtremes random_extremes(std::mt19937_64& rng, Regularization reg);

/// A valid random system with the given regularization pattern.
DoubleSaddleSystem random_valid_system(std::mt19937_64& rng, Regularization reg,
                                       Index max_n = 30, Index max_m = 20, Index max_p = 10);

/// Same system with C replaced by a matrix of rank p - k (singular values
/// otherwise kept) and E made positive definite.
DoubleSaddleSystem with_c_nullity(const DoubleSaddleSystem& system, Index k);

}  // namespace dsaddle::testing
