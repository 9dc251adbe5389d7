#include "dsaddle/spectral.hpp"

#include "dsaddle/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

namespace dsaddle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const StoredMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw StructuralError(std::string(what) + " must be square, got " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()));
}

Vector dense_eigenvalues(const DenseMatrix& sym);

// eta = lambda_max(rhs^{-1} lhs); a numerically singular rhs gives +inf.
double eta_or_infinity(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  try {
    return std::max(0.0, generalized_extremes(lhs, rhs).max);
  } catch (const DefinitenessError&) {
    return std::numeric_limits<double>::infinity();
  }
}

Vector dense_eigenvalues(const DenseMatrix& sym) {
  if (sym.rows() == 0) return Vector(0);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("symmetric eigensolver failed to converge");
  return es.eigenvalues();
}

}  // namespace

ExtremePair extremal_eigs(const DenseMatrix& sym) {
  if (sym.rows() == 0) return {};
  const Vector ev = dense_eigenvalues(sym);
  return {ev(0), ev(ev.size() - 1)};
}

ExtremePair extremal_eigs(const StoredMatrix& sym, const SpectralOptions& opts) {
  require_square(sym, "extremal_eigs input");
  if (sym.rows() <= opts.dense_cutoff) return extremal_eigs(sym.to_dense());
  const auto op = [&sym](const Vector& x) { return sym.multiply(x); };
  return lanczos_extremes(op, sym.rows(), opts).values;
}

ExtremePair extremal_svals(const StoredMatrix& mat) {
  const Index r = mat.rows();
  if (r > mat.cols())
    throw StructuralError("extremal_svals expects rows <= cols, got " + std::to_string(r) + "x" +
                          std::to_string(mat.cols()));
  if (r == 0) return {};
  DenseMatrix gram;
  if (const auto* s = mat.sparse_if()) {
    gram = DenseMatrix(*s * SparseMatrix(s->transpose()));
  } else {
    const auto& d = *mat.dense_if();
    gram = d * d.transpose();
  }
  const Vector ev = dense_eigenvalues(gram);
  const double top = std::max(ev(r - 1), 0.0);
  double bottom = std::max(ev(0), 0.0);
  // A Gram eigenvalue at round-off level means a rank-deficient matrix.
  if (bottom <= 100.0 * kEps * static_cast<double>(r) * top) bottom = 0.0;
  return {std::sqrt(bottom), std::sqrt(top)};
}

Vector full_spectrum(const DenseMatrix& sym, const SpectralOptions& opts) {
  if (sym.rows() != sym.cols()) throw StructuralError("full_spectrum input must be square");
  if (sym.rows() > opts.oracle_cutoff)
    throw OversizeError("full_spectrum refuses dimension " + std::to_string(sym.rows()) +
                        " (oracle cutoff " + std::to_string(opts.oracle_cutoff) + ")");
  return dense_eigenvalues(sym);
}

Vector full_spectrum(const StoredMatrix& sym, const SpectralOptions& opts) {
  require_square(sym, "full_spectrum input");
  if (sym.rows() > opts.oracle_cutoff)
    throw OversizeError("full_spectrum refuses dimension " + std::to_string(sym.rows()) +
                        " (oracle cutoff " + std::to_string(opts.oracle_cutoff) + ")");
  return dense_eigenvalues(sym.to_dense());
}

Inertia inertia(const DenseMatrix& sym, const SpectralOptions& opts) {
  if (sym.rows() != sym.cols()) throw StructuralError("inertia input must be square");
  Inertia result;
  if (inertia_by_factorization(sym, opts.zero_tol, result)) return result;
  if (sym.rows() > opts.oracle_cutoff)
    throw Error("inertia: factorization hit a near-zero pivot and dimension " +
                std::to_string(sym.rows()) + " exceeds the spectral fallback cutoff");
  const Vector ev = full_spectrum(sym, opts);
  const double scale = ev.size() ? std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) : 0.0;
  const double zero = opts.zero_tol * scale;
  result = {};
  for (double lambda : ev) {
    if (lambda > zero) ++result.positive;
    else if (lambda < -zero) ++result.negative;
    else ++result.zero;
  }
  return result;
}

Inertia inertia(const StoredMatrix& sym, const SpectralOptions& opts) {
  require_square(sym, "inertia input");
  return inertia(sym.to_dense(), opts);
}

void BlockExtremes::check() const {
  const auto fail = [](const std::string& why) { throw ParameterError("BlockExtremes: " + why); };
  const double vals[] = {mu_max_a, mu_min_a, sigma_max_b, sigma_min_b, sigma_max_c,
                         sigma_min_c, mu_max_d, mu_min_d, mu_max_e, mu_min_e};
  for (double v : vals)
    if (!std::isfinite(v)) fail("non-finite extreme");
  if (!(mu_min_a > 0.0)) fail("mu_min_A must be > 0");
  if (mu_min_d < 0.0) fail("mu_min_D must be >= 0");
  if (mu_min_e < 0.0) fail("mu_min_E must be >= 0");
  if (sigma_min_b < 0.0 || sigma_min_c < 0.0) fail("singular values must be >= 0");
  if (mu_max_a < mu_min_a) fail("mu_max_A < mu_min_A");
  if (sigma_max_b < sigma_min_b) fail("sigma_max_B < sigma_min_B");
  if (sigma_max_c < sigma_min_c) fail("sigma_max_C < sigma_min_C");
  if (mu_max_d < mu_min_d) fail("mu_max_D < mu_min_D");
  if (mu_max_e < mu_min_e) fail("mu_max_E < mu_min_E");
}

BlockExtremes BlockExtremes::without_regularization() const {
  BlockExtremes out = *this;
  out.mu_max_d = out.mu_min_d = 0.0;
  out.mu_max_e = out.mu_min_e = 0.0;
  return out;
}

BlockExtremes block_extremes(const DoubleSaddleSystem& system, const SpectralOptions& opts) {
  BlockExtremes x;
  const auto a = extremal_eigs(system.a(), opts);
  x.mu_min_a = a.min;
  x.mu_max_a = a.max;
  const auto b = extremal_svals(system.b());
  x.sigma_min_b = b.min;
  x.sigma_max_b = b.max;
  const auto c = extremal_svals(system.c());
  x.sigma_min_c = c.min;
  x.sigma_max_c = c.max;

  const auto psd = [&](const StoredMatrix& m, double& lo, double& hi) {
    if (m.is_zero()) {
      lo = hi = 0.0;
      return;
    }
    const auto e = extremal_eigs(m, opts);
    const double scale = std::max(std::abs(e.min), std::abs(e.max));
    const double slack = 1e-12 * scale;
    lo = (e.min < 0.0 && e.min >= -slack) ? 0.0 : e.min;
    hi = (e.max < 0.0 && e.max >= -slack) ? 0.0 : e.max;
  };
  psd(system.d(), x.mu_min_d, x.mu_max_d);
  psd(system.e(), x.mu_min_e, x.mu_max_e);
  return x;
}

Index numerical_rank(const DenseMatrix& mat, double rank_tol) {
  if (mat.size() == 0) return 0;
  Eigen::BDCSVD<DenseMatrix> svd(mat);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Index rank = 0;
  for (double s : sv)
    if (s > rank_tol * sv(0)) ++rank;
  return rank;
}

double max_generalized_eig(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  return generalized_extremes(lhs, rhs).max;
}

ExtremePair generalized_extremes(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() || lhs.rows() != lhs.cols())
    throw StructuralError("generalized eigenproblem needs two square matrices of equal size");
  if (lhs.rows() == 0) return {};
  Eigen::LLT<DenseMatrix> chol(rhs);
  if (chol.info() != Eigen::Success)
    throw DefinitenessError("generalized eigenproblem: right-hand matrix is not positive definite");
  // L^{-1} lhs L^{-T}
  DenseMatrix reduced = chol.matrixL().solve(lhs);
  reduced = chol.matrixL().solve(DenseMatrix(reduced.transpose()));
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  return extremal_eigs(reduced);
}

DenseMatrix spd_function(const DenseMatrix& spd, const std::function<double(double)>& fn,
                         double floor_rel) {
  if (spd.rows() == 0) return spd;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(spd);
  if (es.info() != Eigen::Success) throw Error("symmetric eigensolver failed to converge");
  Vector ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  if (!(top > 0.0)) throw DefinitenessError("spd_function: matrix is not positive definite");
  if (ev(0) <= -1e-8 * top)
    throw DefinitenessError("spd_function: matrix has a negative eigenvalue");
  const double floor = floor_rel * top;
  for (double& v : ev) v = fn(std::max(v, floor));
  const auto& vecs = es.eigenvectors();
  return vecs * ev.asDiagonal() * vecs.transpose();
}

SchurPair schur_complements(const DoubleSaddleSystem& system, const Tolerances& tol) {
  const DenseMatrix a = system.a().to_dense();
  const DenseMatrix b = system.b().to_dense();
  const DenseMatrix c = system.c().to_dense();
  const DenseMatrix d = system.d().to_dense();
  const DenseMatrix e = system.e().to_dense();
  const auto dims = system.dims();

  Eigen::LLT<DenseMatrix> chol_a(a);
  if (chol_a.info() != Eigen::Success) throw DefinitenessError("A is not positive definite");
  const DenseMatrix wb = chol_a.matrixL().solve(DenseMatrix(b.transpose()));  // L^{-1} B^T
  const DenseMatrix bab = wb.transpose() * wb;                                // B A^{-1} B^T

  SchurPair out;
  out.s1 = d + bab;
  Eigen::LLT<DenseMatrix> chol_s1(out.s1);
  if (chol_s1.info() != Eigen::Success) throw DefinitenessError("S1 is not positive definite");
  const DenseMatrix wc = chol_s1.matrixL().solve(DenseMatrix(c.transpose()));  // L1^{-1} C^T
  const DenseMatrix csc = wc.transpose() * wc;                                 // C S1^{-1} C^T
  out.s2 = e + csc;

  constexpr double inf = std::numeric_limits<double>::infinity();
  if (system.d().is_zero()) {
    out.eta_d = 0.0;
  } else if (numerical_rank(b, tol.rank_tol) < dims.m) {
    out.eta_d = inf;
  } else {
    out.eta_d = eta_or_infinity(d, bab);
  }
  if (system.e().is_zero()) {
    out.eta_e = 0.0;
  } else if (numerical_rank(c, tol.rank_tol) < dims.p) {
    out.eta_e = inf;
  } else {
    out.eta_e = eta_or_infinity(e, csc);
  }
  return out;
}

}  // namespace dsaddle
