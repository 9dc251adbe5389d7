#include "dsaddle/krylov.hpp"

#include "dsaddle/errors.hpp"

#include <cmath>
#include <limits>

namespace dsaddle {

namespace {

double m_norm_squared(const Vector& r, const Vector& z) {
  const double value = r.dot(z);
  if (value < 0.0)
    throw DefinitenessError("MINRES: preconditioner is not positive definite (r'M^{-1}r < 0)");
  return value;
}

}  // namespace

SolveResult minres(const MatVec& k, const MatVec& precond_inverse, const Vector& b,
                   const MinresOptions& opts) {
  const Index dim = b.size();
  const Index maxit = opts.maxit < 0 ? 4 * dim : opts.maxit;
  const auto apply_m_inv = [&](const Vector& v) { return precond_inverse ? precond_inverse(v) : v; };
  if (!b.allFinite()) throw ParameterError("MINRES: right-hand side is not finite");

  SolveResult res;
  res.solution = Vector::Zero(dim);

  Vector r1 = b;
  Vector y = apply_m_inv(r1);
  const double beta1 = std::sqrt(m_norm_squared(r1, y));
  res.residual_history.push_back(beta1);
  if (beta1 == 0.0) {
    res.converged = true;
    return res;
  }

  Vector r2 = r1;
  Vector w = Vector::Zero(dim);
  Vector w1 = Vector::Zero(dim);
  Vector w2 = Vector::Zero(dim);
  double beta = beta1;
  double oldb = 0.0;
  double dbar = 0.0;
  double epsln = 0.0;
  double phibar = beta1;
  double cs = -1.0;
  double sn = 0.0;
  constexpr double tiny = std::numeric_limits<double>::min();

  for (Index itn = 1; itn <= maxit; ++itn) {
    const Vector v = y / beta;
    y = k(v);
    if (itn >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    y = apply_m_inv(r2);
    oldb = beta;
    beta = std::sqrt(m_norm_squared(r2, y));

    // Apply the previous rotation, then form the new one.
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    const double gamma = std::max(std::hypot(gbar, beta), tiny);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    res.solution += phi * w;
    res.iterations = itn;
    res.residual_history.push_back(phibar);

    if (phibar <= opts.rtol * beta1) {
      res.converged = true;
      break;
    }
    if (beta <= opts.breakdown_tol * beta1) {
      res.breakdown = "Lanczos breakdown: invariant subspace reached before rtol";
      break;
    }
  }
  return res;
}

SolveResult minres(const StoredMatrix& k, const PreconditionerOperator* m, const Vector& b,
                   const MinresOptions& opts) {
  if (k.rows() != b.size() || k.cols() != b.size())
    throw StructuralError("MINRES: operator and right-hand side sizes differ");
  const MatVec op = [&k](const Vector& x) { return k.multiply(x); };
  MatVec pre;
  if (m != nullptr) pre = [m](const Vector& x) { return m->apply_inverse(x); };
  return minres(op, pre, b, opts);
}

std::vector<ResidualRow> residual_report(const SolveResult& result) {
  std::vector<ResidualRow> rows;
  if (result.residual_history.empty()) return rows;
  const double first = result.residual_history.front();
  for (std::size_t i = 0; i < result.residual_history.size(); ++i) {
    const double r = result.residual_history[i];
    rows.push_back({static_cast<Index>(i), first == 0.0 ? 0.0 : r / first});
  }
  return rows;
}

}  // namespace dsaddle
