#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <variant>

namespace dsaddle {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

/// Total dimension above which assembled systems switch to sparse storage.
inline constexpr Index kDenseCutoff = 4096;

/// A matrix held either densely or in compressed-row form.
///
/// Blocks of small systems are dense; FEM blocks and anything assembled
/// above kDenseCutoff stay sparse. Every bound computation works on dense
/// copies obtained through to_dense(), so the choice is purely a storage one.
class StoredMatrix {
 public:
  StoredMatrix() = default;
  explicit StoredMatrix(DenseMatrix dense) : storage_(std::move(dense)) {}
  explicit StoredMatrix(SparseMatrix sparse) : storage_(std::move(sparse)) {}

  static StoredMatrix zero(Index rows, Index cols, bool sparse);
  static StoredMatrix identity(Index size, bool sparse);

  Index rows() const;
  Index cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(storage_); }

  DenseMatrix to_dense() const;
  SparseMatrix to_sparse() const;

  /// Same values, storage chosen by `sparse`.
  StoredMatrix with_storage(bool sparse) const;

  Vector multiply(const Vector& x) const;
  Vector multiply_transpose(const Vector& x) const;

  StoredMatrix transposed() const;
  StoredMatrix scaled(double factor) const;

  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }

  /// max |M - M^T|; only meaningful for square matrices.
  double asymmetry() const;

  const DenseMatrix* dense_if() const { return std::get_if<DenseMatrix>(&storage_); }
  const SparseMatrix* sparse_if() const { return std::get_if<SparseMatrix>(&storage_); }

 private:
  std::variant<DenseMatrix, SparseMatrix> storage_{DenseMatrix(0, 0)};
};

}  // namespace dsaddle
