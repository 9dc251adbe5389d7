#include "dsaddle/problems.hpp"

#include "dsaddle/cubic.hpp"
#include "dsaddle/errors.hpp"

#include <Eigen/QR>

#include <cmath>
#include <random>
#include <sstream>

namespace dsaddle {

namespace {

void require_positive(std::initializer_list<double> values, const char* fixture) {
  for (double v : values)
    if (!(v > 0.0)) throw ParameterError(std::string(fixture) + ": parameters must be positive");
}

DenseMatrix haar_columns(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  DenseMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(rows, cols);
  const DenseMatrix& r = qr.matrixQR();
  for (Index j = 0; j < cols; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

// `count` values in [lo, hi], first lo, second hi, the rest spread
// log-uniformly (uniformly when lo is 0).
Vector spread(Index count, double lo, double hi, std::mt19937_64& rng, const char* what) {
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    std::ostringstream os;
    os << what << ": impossible extremes [" << lo << ", " << hi << "]";
    throw ParameterError(os.str());
  }
  if (count == 1 && lo != hi) {
    std::ostringstream os;
    os << what << ": a single value cannot hit both extremes " << lo << " and " << hi;
    throw ParameterError(os.str());
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector out(count);
  for (Index i = 0; i < count; ++i) {
    if (i == 0) {
      out(i) = lo;
    } else if (i == 1) {
      out(i) = hi;
    } else {
      const double t = unit(rng);
      out(i) = lo > 0.0 ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                        : lo + t * (hi - lo);
    }
  }
  return out;
}

DenseMatrix random_symmetric(Index size, double lo, double hi, std::mt19937_64& rng,
                             const char* what) {
  if (lo == 0.0 && hi == 0.0) return DenseMatrix::Zero(size, size);
  const Vector eigs = spread(size, lo, hi, rng, what);
  const DenseMatrix q = haar_columns(size, size, rng);
  DenseMatrix out = q * eigs.asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());
}

// rows x cols with rows <= cols and singular values spread over [lo, hi].
DenseMatrix random_rectangular(Index rows, Index cols, double lo, double hi,
                               std::mt19937_64& rng, const char* what) {
  const Vector sv = spread(rows, lo, hi, rng, what);
  const DenseMatrix u = haar_columns(rows, rows, rng);
  const DenseMatrix v = haar_columns(cols, rows, rng);
  return u * sv.asDiagonal() * v.transpose();
}

}  // namespace

DoubleSaddleSystem tightness_upper_negative(const TightNegativeParams& t) {
  require_positive({t.mu_max_a, t.sigma_min_b, t.mu_d, t.sigma_c, t.mu_e}, "tightness_upper_negative");
  DenseMatrix a = t.mu_max_a * DenseMatrix::Identity(2, 2);
  DenseMatrix b = t.sigma_min_b * DenseMatrix::Identity(2, 2);
  DenseMatrix c(1, 2);
  c << 0.0, t.sigma_c;
  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d(1, 1) = t.mu_d;
  DenseMatrix e(1, 1);
  e << t.mu_e;
  return DoubleSaddleSystem::from_dense(a, b, c, d, e);
}

DoubleSaddleSystem tightness_lower_positive(const TightPositiveParams& t) {
  require_positive({t.mu_min_a, t.sigma_max_b, t.mu_max_d, t.sigma_min_c, t.mu_e},
                   "tightness_lower_positive");
  const DenseMatrix id = DenseMatrix::Identity(2, 2);
  DenseMatrix e = DenseMatrix::Zero(2, 2);
  e(1, 1) = t.mu_e;
  return DoubleSaddleSystem::from_dense(t.mu_min_a * id, t.sigma_max_b * id, t.sigma_min_c * id,
                                        t.mu_max_d * id, e);
}

double tightness_upper_negative_endpoint(const TightNegativeParams& t) {
  return (t.mu_max_a - std::sqrt(t.mu_max_a * t.mu_max_a + 4.0 * t.sigma_min_b * t.sigma_min_b)) /
         2.0;
}

double tightness_lower_positive_endpoint(const TightPositiveParams& t) {
  return classified_roots(t.mu_min_a, t.sigma_max_b, t.sigma_min_c, t.mu_max_d, 0.0).pos_min;
}

std::vector<Index> tightness_upper_negative_permutation() { return {0, 2, 1, 3, 4}; }

std::vector<Index> tightness_lower_positive_permutation() { return {0, 2, 4, 1, 3, 5}; }

DoubleSaddleSystem random_system(Dims dims, std::uint64_t seed, const BlockExtremes& x) {
  if (!(dims.n >= dims.m && dims.m >= dims.p && dims.p >= 1))
    throw ParameterError("random_system: dimensions must satisfy n >= m >= p >= 1");
  if (!(x.mu_min_a > 0.0)) throw ParameterError("random_system: mu_min_A must be positive");
  std::mt19937_64 rng(seed);
  const DenseMatrix a = random_symmetric(dims.n, x.mu_min_a, x.mu_max_a, rng, "A");
  const DenseMatrix b = random_rectangular(dims.m, dims.n, x.sigma_min_b, x.sigma_max_b, rng, "B");
  const DenseMatrix c = random_rectangular(dims.p, dims.m, x.sigma_min_c, x.sigma_max_c, rng, "C");
  const DenseMatrix d = random_symmetric(dims.m, x.mu_min_d, x.mu_max_d, rng, "D");
  const DenseMatrix e = random_symmetric(dims.p, x.mu_min_e, x.mu_max_e, rng, "E");
  return DoubleSaddleSystem::from_dense(a, b, c, d, e);
}

}  // namespace dsaddle
