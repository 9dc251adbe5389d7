#include "dsaddle/precond.hpp"

#include "dsaddle/errors.hpp"
#include "dsaddle/spectral.hpp"

#include <cmath>
#include <sstream>

namespace dsaddle {

namespace {

const char* kBlockNames[3] = {"A", "S1", "S2"};

DenseMatrix symmetrized(const DenseMatrix& m) { return 0.5 * (m + m.transpose()); }

bool is_pearson_wathen_structure(const DoubleSaddleSystem& s, double& beta) {
  const Dims d = s.dims();
  if (!(d.n == d.m && d.m == d.p)) return false;
  if (!s.d().is_zero()) return false;
  const DenseMatrix a = s.a().to_dense();
  const DenseMatrix b = s.b().to_dense();
  const DenseMatrix c = s.c().to_dense();
  const DenseMatrix e = s.e().to_dense();
  const double e_norm = e.cwiseAbs().maxCoeff();
  if (e_norm == 0.0) return false;
  const double tol = 1e-10;
  if ((b + e).cwiseAbs().maxCoeff() > tol * e_norm) return false;
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > tol * c.cwiseAbs().maxCoeff()) return false;
  beta = (a.cwiseProduct(e)).sum() / e.squaredNorm();
  if (!(beta > 0.0)) return false;
  return (a - beta * e).cwiseAbs().maxCoeff() <= tol * a.cwiseAbs().maxCoeff();
}

}  // namespace

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::exact:
      return "exact";
    case BlockKind::jacobi:
      return "jacobi";
    case BlockKind::identity_scaled:
      return "identity-scaled";
    case BlockKind::scaled:
      return "scaled";
    case BlockKind::pearson_wathen:
      return "pearson-wathen";
    case BlockKind::drop_term:
      return "drop-term";
    case BlockKind::user:
      return "user";
  }
  return "unknown";
}

bool PreconditionerStrategy::all_exact() const {
  for (const auto& b : blocks)
    if (b.kind != BlockKind::exact) return false;
  return true;
}

PreconditionerStrategy PreconditionerStrategy::from_name(const std::string& name) {
  PreconditionerStrategy s;
  s.name = name;
  if (name == "exact") return s;
  if (name == "jacobi") {
    s.blocks = {BlockStrategy::jacobi(), BlockStrategy::jacobi(), BlockStrategy::jacobi()};
    return s;
  }
  if (name == "pearson-wathen") {
    s.blocks[2] = BlockStrategy::pearson_wathen();
    return s;
  }
  if (name == "drop-term") {
    s.blocks[2] = BlockStrategy::drop_term();
    return s;
  }
  throw ParameterError("unknown preconditioner strategy '" + name + "'");
}

PreconditionerOperator::PreconditionerOperator(std::array<DenseMatrix, 3> blocks,
                                               std::string strategy)
    : blocks_(std::move(blocks)), strategy_(std::move(strategy)) {
  for (int i = 0; i < 3; ++i) {
    const auto& blk = blocks_[static_cast<std::size_t>(i)];
    if (blk.rows() != blk.cols())
      throw StructuralError(std::string("preconditioner block ") + kBlockNames[i] +
                            " is not square");
    factors_[static_cast<std::size_t>(i)].compute(blk);
    if (factors_[static_cast<std::size_t>(i)].info() != Eigen::Success)
      throw DefinitenessError(std::string("preconditioner block ") + kBlockNames[i] +
                              " is not positive definite");
  }
  dims_ = {blocks_[0].rows(), blocks_[1].rows(), blocks_[2].rows()};
}

Vector PreconditionerOperator::apply_inverse(const Vector& v) const {
  if (v.size() != dims_.total()) throw StructuralError("apply_inverse: length mismatch");
  Vector out(v.size());
  out.head(dims_.n) = factors_[0].solve(v.head(dims_.n));
  out.segment(dims_.n, dims_.m) = factors_[1].solve(v.segment(dims_.n, dims_.m));
  out.tail(dims_.p) = factors_[2].solve(v.tail(dims_.p));
  return out;
}

Vector PreconditionerOperator::apply(const Vector& v) const {
  if (v.size() != dims_.total()) throw StructuralError("apply: length mismatch");
  Vector out(v.size());
  out.head(dims_.n) = blocks_[0] * v.head(dims_.n);
  out.segment(dims_.n, dims_.m) = blocks_[1] * v.segment(dims_.n, dims_.m);
  out.tail(dims_.p) = blocks_[2] * v.tail(dims_.p);
  return out;
}

DenseMatrix PreconditionerOperator::dense() const {
  DenseMatrix out = DenseMatrix::Zero(dims_.total(), dims_.total());
  out.topLeftCorner(dims_.n, dims_.n) = blocks_[0];
  out.block(dims_.n, dims_.n, dims_.m, dims_.m) = blocks_[1];
  out.bottomRightCorner(dims_.p, dims_.p) = blocks_[2];
  return out;
}

std::array<DenseMatrix, 3> exact_blocks(const DoubleSaddleSystem& system) {
  const DenseMatrix a = symmetrized(system.a().to_dense());
  const DenseMatrix b = system.b().to_dense();
  const DenseMatrix c = system.c().to_dense();

  Eigen::LLT<DenseMatrix> chol_a(a);
  if (chol_a.info() != Eigen::Success) throw DefinitenessError("A is not positive definite");
  const DenseMatrix wb = chol_a.matrixL().solve(DenseMatrix(b.transpose()));
  const DenseMatrix s1 = symmetrized(system.d().to_dense()) + wb.transpose() * wb;

  Eigen::LLT<DenseMatrix> chol_s1(s1);
  if (chol_s1.info() != Eigen::Success) throw DefinitenessError("S1 is not positive definite");
  const DenseMatrix wc = chol_s1.matrixL().solve(DenseMatrix(c.transpose()));
  const DenseMatrix s2 = symmetrized(system.e().to_dense()) + wc.transpose() * wc;
  return {a, s1, s2};
}

PreconditionerOperator build_exact(const DoubleSaddleSystem& system) {
  return PreconditionerOperator(exact_blocks(system), "exact");
}

PreconditionerOperator build_approx(const DoubleSaddleSystem& system,
                                    const PreconditionerStrategy& strategy) {
  const std::array<DenseMatrix, 3> exact = exact_blocks(system);
  std::array<DenseMatrix, 3> blocks;
  for (int i = 0; i < 3; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const BlockStrategy& bs = strategy.blocks[idx];
    const DenseMatrix& ex = exact[idx];
    switch (bs.kind) {
      case BlockKind::exact:
        blocks[idx] = ex;
        break;
      case BlockKind::jacobi:
        blocks[idx] = DenseMatrix(ex.diagonal().asDiagonal());
        break;
      case BlockKind::identity_scaled:
        blocks[idx] = bs.factor * DenseMatrix::Identity(ex.rows(), ex.cols());
        break;
      case BlockKind::scaled:
        blocks[idx] = bs.factor * ex;
        break;
      case BlockKind::pearson_wathen: {
        if (i != 2) throw ParameterError("pearson-wathen only approximates the S2 block");
        double beta = 0.0;
        if (!is_pearson_wathen_structure(system, beta))
          throw StrategyMismatchError(
              "pearson-wathen needs D = 0, B = -E, A = beta*E and symmetric C");
        const DenseMatrix e = symmetrized(system.e().to_dense());
        const DenseMatrix f = e + std::sqrt(beta) * system.c().to_dense();
        blocks[idx] = symmetrized(f.transpose() * e.llt().solve(f));
        break;
      }
      case BlockKind::drop_term: {
        if (i != 2) throw ParameterError("drop-term only approximates the S2 block");
        const DenseMatrix e = symmetrized(system.e().to_dense());
        Eigen::LLT<DenseMatrix> chol(e);
        const double scale = e.cwiseAbs().maxCoeff();
        bool spd = chol.info() == Eigen::Success && scale > 0.0;
        if (spd) spd = extremal_eigs(e).min > 1e-12 * extremal_eigs(e).max;
        if (!spd) throw DefinitenessError("drop-term needs a positive definite E block");
        blocks[idx] = e;
        break;
      }
      case BlockKind::user:
        if (bs.user_matrix.rows() != ex.rows() || bs.user_matrix.cols() != ex.cols()) {
          std::ostringstream os;
          os << "user block for " << kBlockNames[i] << " has shape " << bs.user_matrix.rows()
             << "x" << bs.user_matrix.cols() << ", expected " << ex.rows() << "x" << ex.cols();
          throw StructuralError(os.str());
        }
        blocks[idx] = symmetrized(bs.user_matrix);
        break;
    }
  }
  return PreconditionerOperator(std::move(blocks), strategy.name);
}

SplitPreconditioned split_preconditioned_matrix(const DoubleSaddleSystem& system,
                                                const PreconditionerOperator& op,
                                                Index oracle_cutoff) {
  const Dims d = system.dims();
  if (!(op.dims() == d)) throw StructuralError("preconditioner dimensions do not match system");
  if (d.total() > oracle_cutoff)
    throw OversizeError("split preconditioned matrix above the dense oracle cutoff");

  const auto inv_sqrt = [](double x) { return 1.0 / std::sqrt(x); };
  const DenseMatrix ra = spd_function(op.block(0), inv_sqrt);
  const DenseMatrix r1 = spd_function(op.block(1), inv_sqrt);
  const DenseMatrix r2 = spd_function(op.block(2), inv_sqrt);

  const DenseMatrix q0 = symmetrized(ra * system.a().to_dense() * ra);
  const DenseMatrix bt = r1 * system.b().to_dense() * ra;
  const DenseMatrix ct = r2 * system.c().to_dense() * r1;
  const DenseMatrix dt = symmetrized(r1 * system.d().to_dense() * r1);
  const DenseMatrix et = symmetrized(r2 * system.e().to_dense() * r2);

  SplitPreconditioned out;
  out.dims = d;
  out.matrix = DenseMatrix::Zero(d.total(), d.total());
  out.matrix.topLeftCorner(d.n, d.n) = q0;
  out.matrix.block(d.n, 0, d.m, d.n) = bt;
  out.matrix.block(0, d.n, d.n, d.m) = bt.transpose();
  out.matrix.block(d.n, d.n, d.m, d.m) = -dt;
  out.matrix.block(d.n + d.m, d.n, d.p, d.m) = ct;
  out.matrix.block(d.n, d.n + d.m, d.m, d.p) = ct.transpose();
  out.matrix.bottomRightCorner(d.p, d.p) = et;
  return out;
}

Equivalence equivalence_constants(const DenseMatrix& exact, const DenseMatrix& approx) {
  const ExtremePair raw = generalized_extremes(symmetrized(exact), symmetrized(approx));
  if (!(raw.min > 0.0))
    throw DefinitenessError("equivalence constants: exact block is not positive definite");
  Equivalence out;
  out.raw_min = raw.min;
  out.raw_max = raw.max;
  out.alpha = std::min(raw.min, 1.0);
  out.beta = std::max(raw.max, 1.0);
  out.scale = raw.min > 1.0 ? raw.min : (raw.max < 1.0 ? raw.max : 1.0);
  return out;
}

MeasuredConstants measured_constants(const DoubleSaddleSystem& system,
                                     const PreconditionerOperator& op) {
  const std::array<DenseMatrix, 3> exact = exact_blocks(system);
  MeasuredConstants out;
  for (int i = 0; i < 3; ++i)
    out.blocks[static_cast<std::size_t>(i)] =
        equivalence_constants(exact[static_cast<std::size_t>(i)], op.block(i));
  out.consts = {out.blocks[0].alpha, out.blocks[0].beta, out.blocks[1].alpha,
                out.blocks[1].beta,  out.blocks[2].alpha, out.blocks[2].beta};
  return out;
}

std::optional<EquivalenceConstants> certified_constants(const PreconditionerStrategy& strategy) {
  EquivalenceConstants out;
  double* alphas[3] = {&out.alpha0, &out.alpha1, &out.alpha2};
  for (int i = 0; i < 3; ++i) {
    switch (strategy.blocks[static_cast<std::size_t>(i)].kind) {
      case BlockKind::exact:
        break;
      case BlockKind::pearson_wathen:
        *alphas[i] = 0.5;
        break;
      default:
        return std::nullopt;
    }
  }
  return out;
}

}  // namespace dsaddle
