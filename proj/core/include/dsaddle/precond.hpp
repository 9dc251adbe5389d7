#pragma once

#include "dsaddle/bounds.hpp"
#include "dsaddle/system_model.hpp"

#include <Eigen/Cholesky>

#include <array>
#include <optional>
#include <string>

namespace dsaddle {

enum class BlockKind {
  exact,            ///< the exact block (A, S1 or S2)
  jacobi,           ///< diagonal of the exact block
  identity_scaled,  ///< factor * I
  scaled,           ///< factor * exact block
  pearson_wathen,   ///< (E + sqrt(beta) C) E^{-1} (E + sqrt(beta) C); S2 only
  drop_term,        ///< E alone; S2 only
  user,             ///< caller-supplied SPD matrix
};

std::string to_string(BlockKind kind);

struct BlockStrategy {
  BlockKind kind = BlockKind::exact;
  double factor = 1.0;
  DenseMatrix user_matrix;

  static BlockStrategy exact() { return {}; }
  static BlockStrategy jacobi() { return {BlockKind::jacobi, 1.0, {}}; }
  static BlockStrategy identity_scaled(double f) { return {BlockKind::identity_scaled, f, {}}; }
  static BlockStrategy scaled(double f) { return {BlockKind::scaled, f, {}}; }
  static BlockStrategy pearson_wathen() { return {BlockKind::pearson_wathen, 1.0, {}}; }
  static BlockStrategy drop_term() { return {BlockKind::drop_term, 1.0, {}}; }
  static BlockStrategy user(DenseMatrix m) { return {BlockKind::user, 1.0, std::move(m)}; }
};

/// Strategies for the (A, S1, S2) blocks.
struct PreconditionerStrategy {
  std::string name = "exact";
  std::array<BlockStrategy, 3> blocks{};

  bool all_exact() const;

  /// `exact`, `jacobi`, `pearson-wathen` or `drop-term`. The `user:<path>`
  /// form needs file access and is resolved by the I/O layer.
  static PreconditionerStrategy from_name(const std::string& name);
};

/// Block-diagonal SPD preconditioner diag(At, S1t, S2t), each block held
/// densely together with its Cholesky factor.
class PreconditionerOperator {
 public:
  PreconditionerOperator(std::array<DenseMatrix, 3> blocks, std::string strategy);

  Dims dims() const { return dims_; }
  const std::string& strategy() const { return strategy_; }
  const DenseMatrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }

  /// M^{-1} v by blockwise Cholesky solves.
  Vector apply_inverse(const Vector& v) const;
  /// M v.
  Vector apply(const Vector& v) const;
  DenseMatrix dense() const;

 private:
  std::array<DenseMatrix, 3> blocks_;
  std::array<Eigen::LLT<DenseMatrix>, 3> factors_;
  Dims dims_;
  std::string strategy_;
};

/// Exact A, S1 and S2 of the system. Throws DefinitenessError naming the
/// first block that is not positive definite.
std::array<DenseMatrix, 3> exact_blocks(const DoubleSaddleSystem& system);

PreconditionerOperator build_exact(const DoubleSaddleSystem& system);

/// Throws StrategyMismatchError for pearson_wathen on a system without the
/// D = 0, B = -E, A = beta*E structure with symmetric C, and
/// DefinitenessError for drop_term with a singular E.
PreconditionerOperator build_approx(const DoubleSaddleSystem& system,
                                    const PreconditionerStrategy& strategy);

/// Mt^{-1/2} K Mt^{-1/2} in the standard layout.
struct SplitPreconditioned {
  DenseMatrix matrix;
  Dims dims;

  DenseMatrix q0() const { return matrix.topLeftCorner(dims.n, dims.n); }
  DenseMatrix b() const { return matrix.block(dims.n, 0, dims.m, dims.n); }
  DenseMatrix c() const { return matrix.block(dims.n + dims.m, dims.n, dims.p, dims.m); }
  DenseMatrix d() const { return -matrix.block(dims.n, dims.n, dims.m, dims.m); }
  DenseMatrix e() const { return matrix.bottomRightCorner(dims.p, dims.p); }
};

/// Throws OversizeError above oracle_cutoff.
SplitPreconditioned split_preconditioned_matrix(const DoubleSaddleSystem& system,
                                                const PreconditionerOperator& op,
                                                Index oracle_cutoff = kDenseCutoff);

/// Extremes of Lambda(approx^{-1} exact). alpha = min(raw_min, 1) and
/// beta = max(raw_max, 1); `scale` is the factor that would move the raw
/// interval to straddle 1 (1 when it already does).
struct Equivalence {
  double raw_min = 1.0;
  double raw_max = 1.0;
  double scale = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
};

Equivalence equivalence_constants(const DenseMatrix& exact, const DenseMatrix& approx);

struct MeasuredConstants {
  std::array<Equivalence, 3> blocks;
  EquivalenceConstants consts;
};

MeasuredConstants measured_constants(const DoubleSaddleSystem& system,
                                     const PreconditionerOperator& op);

/// Constants known a priori for a strategy: all ones for exact blocks and
/// [1/2, 1] for the Pearson-Wathen S2. Empty for anything else.
std::optional<EquivalenceConstants> certified_constants(const PreconditionerStrategy& strategy);

}  // namespace dsaddle
