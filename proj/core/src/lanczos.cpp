#include "dsaddle/errors.hpp"
#include "dsaddle/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace dsaddle {

namespace {

Vector random_unit(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = normal(rng);
  return v / v.norm();
}

// Two passes of classical Gram-Schmidt against the first `k` columns.
void reorthogonalize(const DenseMatrix& basis, Index k, Vector& w) {
  if (k == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const Vector coeffs = basis.leftCols(k).transpose() * w;
    w.noalias() -= basis.leftCols(k) * coeffs;
  }
}

}  // namespace

LanczosResult lanczos_extremes(const MatVec& op, Index dim, const SpectralOptions& opts) {
  if (dim <= 0) throw StructuralError("lanczos_extremes: empty operator");
  const Index max_steps = std::min(dim, opts.lanczos_max_iter);
  std::mt19937_64 rng(opts.lanczos_seed);

  DenseMatrix basis(dim, max_steps);
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples v_j and v_{j+1}
  alpha.reserve(max_steps);
  beta.reserve(max_steps);

  basis.col(0) = random_unit(dim, rng);
  ExtremePair best{};
  double best_residual = std::numeric_limits<double>::infinity();

  for (Index j = 0; j < max_steps; ++j) {
    Vector w = op(basis.col(j));
    const double a = basis.col(j).dot(w);
    alpha.push_back(a);
    w -= a * basis.col(j);
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    reorthogonalize(basis, j + 1, w);
    double b = w.norm();

    const Index k = j + 1;
    Vector diag = Eigen::Map<const Vector>(alpha.data(), k);
    Vector sub(std::max<Index>(k - 1, 0));
    for (Index i = 0; i + 1 < k; ++i) sub(i) = beta[i];
    Eigen::SelfAdjointEigenSolver<DenseMatrix> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Vector& theta = tri.eigenvalues();
    const auto& s = tri.eigenvectors();
    const double norm_est = std::max(std::abs(theta(0)), std::abs(theta(k - 1)));
    const double res_min = std::abs(b * s(k - 1, 0));
    const double res_max = std::abs(b * s(k - 1, k - 1));
    best = {theta(0), theta(k - 1)};
    best_residual = std::max(res_min, res_max);

    const double target = opts.eig_tol * std::max(norm_est, std::numeric_limits<double>::min());
    const bool exhausted = (k == dim);
    if ((res_min <= target && res_max <= target) || exhausted) {
      LanczosResult out;
      out.values = best;
      out.min_vector = basis.leftCols(k) * s.col(0);
      out.max_vector = basis.leftCols(k) * s.col(k - 1);
      out.iterations = k;
      const double r_min = (op(out.min_vector) - theta(0) * out.min_vector).norm();
      const double r_max = (op(out.max_vector) - theta(k - 1) * out.max_vector).norm();
      if ((r_min <= target && r_max <= target) || exhausted) return out;
      best_residual = std::max(r_min, r_max);
    }

    if (k == max_steps) break;
    if (b <= 1e-14 * std::max(norm_est, 1.0)) {
      // Invariant subspace: restart from a fresh direction orthogonal to it.
      Vector fresh = random_unit(dim, rng);
      reorthogonalize(basis, k, fresh);
      const double fn = fresh.norm();
      if (fn <= 1e-12) break;
      w = fresh / fn;
      b = 0.0;
      beta.push_back(b);
      basis.col(k) = w;
      continue;
    }
    beta.push_back(b);
    basis.col(k) = w / b;
  }
  throw ConvergenceError("Lanczos did not converge within " + std::to_string(max_steps) +
                             " steps",
                         best.min, best.max, best_residual);
}

}  // namespace dsaddle
