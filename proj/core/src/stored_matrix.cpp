#include "dsaddle/stored_matrix.hpp"

namespace dsaddle {

StoredMatrix StoredMatrix::zero(Index rows, Index cols, bool sparse) {
  if (sparse) {
    SparseMatrix s(rows, cols);
    s.makeCompressed();
    return StoredMatrix(std::move(s));
  }
  return StoredMatrix(DenseMatrix::Zero(rows, cols));
}

StoredMatrix StoredMatrix::identity(Index size, bool sparse) {
  if (sparse) {
    SparseMatrix s(size, size);
    s.setIdentity();
    return StoredMatrix(std::move(s));
  }
  return StoredMatrix(DenseMatrix::Identity(size, size));
}

Index StoredMatrix::rows() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.rows()); }, storage_);
}

Index StoredMatrix::cols() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.cols()); }, storage_);
}

DenseMatrix StoredMatrix::to_dense() const {
  if (const auto* d = dense_if()) return *d;
  return DenseMatrix(*sparse_if());
}

SparseMatrix StoredMatrix::to_sparse() const {
  if (const auto* s = sparse_if()) return *s;
  SparseMatrix out = dense_if()->sparseView(0.0, 0.0);
  out.makeCompressed();
  return out;
}

StoredMatrix StoredMatrix::with_storage(bool sparse) const {
  if (sparse == is_sparse()) return *this;
  return sparse ? StoredMatrix(to_sparse()) : StoredMatrix(to_dense());
}

Vector StoredMatrix::multiply(const Vector& x) const {
  return std::visit([&](const auto& m) -> Vector { return m * x; }, storage_);
}

Vector StoredMatrix::multiply_transpose(const Vector& x) const {
  return std::visit([&](const auto& m) -> Vector { return m.transpose() * x; }, storage_);
}

StoredMatrix StoredMatrix::transposed() const {
  if (const auto* d = dense_if()) return StoredMatrix(DenseMatrix(d->transpose()));
  SparseMatrix t = sparse_if()->transpose();
  t.makeCompressed();
  return StoredMatrix(std::move(t));
}

StoredMatrix StoredMatrix::scaled(double factor) const {
  if (const auto* d = dense_if()) return StoredMatrix(DenseMatrix(factor * *d));
  SparseMatrix s = factor * *sparse_if();
  return StoredMatrix(std::move(s));
}

double StoredMatrix::max_abs() const {
  if (const auto* d = dense_if()) return d->size() == 0 ? 0.0 : d->cwiseAbs().maxCoeff();
  const auto& s = *sparse_if();
  double best = 0.0;
  for (Index k = 0; k < s.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(s, k); it; ++it) best = std::max(best, std::abs(it.value()));
  return best;
}

double StoredMatrix::asymmetry() const {
  if (const auto* d = dense_if()) {
    if (d->size() == 0) return 0.0;
    return (*d - d->transpose()).cwiseAbs().maxCoeff();
  }
  const auto& s = *sparse_if();
  SparseMatrix diff = s - SparseMatrix(s.transpose());
  return StoredMatrix(std::move(diff)).max_abs();
}

}  // namespace dsaddle
