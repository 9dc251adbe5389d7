#include "dsaddle/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace dsaddle {

namespace {

void symmetric_swap(DenseMatrix& a, Index i, Index j) {
  if (i == j) return;
  a.row(i).swap(a.row(j));
  a.col(i).swap(a.col(j));
}

}  // namespace

// Bunch-Kaufman diagonal pivoting. Only the signs of the pivots are kept.
bool inertia_by_factorization(const DenseMatrix& sym, double zero_tol, Inertia& out) {
  const Index n = sym.rows();
  out = {};
  if (n == 0) return true;
  DenseMatrix a = 0.5 * (sym + sym.transpose());
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm == 0.0) {
    out.zero = n;
    return true;
  }
  const double tiny = zero_tol * norm;
  const double growth = (1.0 + std::sqrt(17.0)) / 8.0;

  Index k = 0;
  while (k < n) {
    const Index rest = n - k - 1;
    double colmax = 0.0;
    Index r = k;
    if (rest > 0) {
      Index arg = 0;
      colmax = a.col(k).tail(rest).cwiseAbs().maxCoeff(&arg);
      r = k + 1 + arg;
    }
    const double akk = std::abs(a(k, k));
    if (std::max(akk, colmax) <= tiny) return false;

    bool two_by_two = false;
    if (akk < growth * colmax) {
      double rowmax = 0.0;
      for (Index j = k; j < n; ++j)
        if (j != r) rowmax = std::max(rowmax, std::abs(a(r, j)));
      if (akk * rowmax >= growth * colmax * colmax) {
        // keep the 1x1 pivot at k
      } else if (std::abs(a(r, r)) >= growth * rowmax) {
        symmetric_swap(a, k, r);
      } else {
        symmetric_swap(a, k + 1, r);
        two_by_two = true;
      }
    }

    if (!two_by_two) {
      const double d = a(k, k);
      if (std::abs(d) <= tiny) return false;
      (d > 0.0 ? out.positive : out.negative) += 1;
      if (rest > 0) {
        const Vector l = a.col(k).tail(rest);
        a.bottomRightCorner(rest, rest).noalias() -= (l / d) * l.transpose();
      }
      k += 1;
    } else {
      const Eigen::Matrix2d pivot = a.block<2, 2>(k, k);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(pivot, Eigen::EigenvaluesOnly);
      for (Index i = 0; i < 2; ++i) {
        const double lambda = es.eigenvalues()(i);
        if (std::abs(lambda) <= tiny) return false;
        (lambda > 0.0 ? out.positive : out.negative) += 1;
      }
      const Index tail = n - k - 2;
      if (tail > 0) {
        const DenseMatrix cb = a.block(k + 2, k, tail, 2);
        const DenseMatrix scaled = cb * pivot.inverse();
        a.bottomRightCorner(tail, tail).noalias() -= scaled * cb.transpose();
      }
      k += 2;
    }
  }
  return true;
}

}  // namespace dsaddle
