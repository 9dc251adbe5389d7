#include "dsaddle/system_model.hpp"

#include "dsaddle/errors.hpp"
#include "dsaddle/spectral.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <sstream>

namespace dsaddle {

namespace {

std::string shape(const StoredMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void expect_shape(const StoredMatrix& m, Index rows, Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << "block " << name << " has shape " << shape(m) << ", expected " << rows << "x"
       << cols;
    throw StructuralError(os.str());
  }
}

std::array<Index, 3> offsets_for(Dims d, Layout layout) {
  switch (layout) {
    case Layout::standard:
      return {0, d.n, d.n + d.m};
    case Layout::flipped:
      return {d.p + d.m, d.p, 0};
    case Layout::two_by_two:
      return {0, d.n + d.p, d.n};
  }
  throw UnsupportedLayoutError("unknown layout");
}

// Appends the lower triangle of a symmetric block twice so the result is
// symmetric bit for bit.
void push_symmetric(std::vector<Triplet>& out, const StoredMatrix& block, Index offset,
                    double sign) {
  const SparseMatrix s = block.to_sparse();
  for (Index r = 0; r < s.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(s, r); it; ++it) {
      if (it.col() > it.row()) continue;
      const double v = sign * it.value();
      out.emplace_back(offset + it.row(), offset + it.col(), v);
      if (it.col() != it.row()) out.emplace_back(offset + it.col(), offset + it.row(), v);
    }
  }
}

void push_coupling(std::vector<Triplet>& out, const StoredMatrix& block, Index row_offset,
                   Index col_offset) {
  const SparseMatrix s = block.to_sparse();
  for (Index r = 0; r < s.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(s, r); it; ++it) {
      out.emplace_back(row_offset + it.row(), col_offset + it.col(), it.value());
      out.emplace_back(col_offset + it.col(), row_offset + it.row(), it.value());
    }
  }
}

double two_norm_sym(const Vector& eigs) {
  if (eigs.size() == 0) return 0.0;
  return std::max(std::abs(eigs(0)), std::abs(eigs(eigs.size() - 1)));
}

Vector sym_eigenvalues(const DenseMatrix& m) {
  if (m.rows() == 0) return Vector(0);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool positive_definite(const DenseMatrix& m, double sym_tol) {
  const Vector eigs = sym_eigenvalues(m);
  if (eigs.size() == 0) return true;
  return eigs(0) > sym_tol * two_norm_sym(eigs);
}

bool positive_semidefinite(const DenseMatrix& m, double sym_tol) {
  const Vector eigs = sym_eigenvalues(m);
  if (eigs.size() == 0) return true;
  return eigs(0) >= -sym_tol * two_norm_sym(eigs);
}

bool symmetric(const StoredMatrix& m, double sym_tol) {
  return m.asymmetry() <= sym_tol * m.max_abs();
}

DenseMatrix stack(std::initializer_list<DenseMatrix> parts) {
  Index rows = 0;
  Index cols = parts.begin()->cols();
  for (const auto& p : parts) rows += p.rows();
  DenseMatrix out(rows, cols);
  Index r = 0;
  for (const auto& p : parts) {
    out.middleRows(r, p.rows()) = p;
    r += p.rows();
  }
  return out;
}

}  // namespace

void check_dimensions(const StoredMatrix& a, const StoredMatrix& b, const StoredMatrix& c,
                      const StoredMatrix& d, const StoredMatrix& e) {
  const Index n = a.rows();
  const Index m = b.rows();
  const Index p = c.rows();
  expect_shape(a, n, n, "A");
  expect_shape(b, m, n, "B");
  expect_shape(c, p, m, "C");
  expect_shape(d, m, m, "D");
  expect_shape(e, p, p, "E");
  if (p < 1) throw StructuralError("block C must have at least one row (p >= 1)");
  if (!(n >= m && m >= p)) {
    std::ostringstream os;
    os << "dimensions must satisfy n >= m >= p, got (" << n << ", " << m << ", " << p << ")";
    throw StructuralError(os.str());
  }
}

DoubleSaddleSystem::DoubleSaddleSystem(StoredMatrix a, StoredMatrix b, StoredMatrix c,
                                       StoredMatrix d, StoredMatrix e)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), e_(std::move(e)) {
  check_dimensions(a_, b_, c_, d_, e_);
  dims_ = {a_.rows(), b_.rows(), c_.rows()};
}

DoubleSaddleSystem DoubleSaddleSystem::from_dense(const DenseMatrix& a, const DenseMatrix& b,
                                                  const DenseMatrix& c, const DenseMatrix& d,
                                                  const DenseMatrix& e) {
  const bool sparse = a.rows() + b.rows() + c.rows() > kDenseCutoff;
  return DoubleSaddleSystem(StoredMatrix(a).with_storage(sparse),
                            StoredMatrix(b).with_storage(sparse),
                            StoredMatrix(c).with_storage(sparse),
                            StoredMatrix(d).with_storage(sparse),
                            StoredMatrix(e).with_storage(sparse));
}

std::string to_string(Layout layout) {
  switch (layout) {
    case Layout::standard:
      return "standard";
    case Layout::flipped:
      return "flipped";
    case Layout::two_by_two:
      return "two-by-two";
  }
  return "unknown";
}

Layout layout_from_string(const std::string& name) {
  if (name == "standard") return Layout::standard;
  if (name == "flipped") return Layout::flipped;
  if (name == "two-by-two" || name == "two_by_two") return Layout::two_by_two;
  throw UnsupportedLayoutError("unknown layout '" + name + "'");
}

bool ValidationReport::ok() const {
  return symmetric_ok.a && symmetric_ok.d && symmetric_ok.e && definiteness_ok.a &&
         definiteness_ok.d && definiteness_ok.e && schur_definite[0] && schur_definite[1];
}

ValidationReport validate(const DoubleSaddleSystem& system, const Tolerances& tol) {
  ValidationReport rep;
  const Dims dims = system.dims();

  rep.symmetric_ok = {symmetric(system.a(), tol.sym_tol), symmetric(system.d(), tol.sym_tol),
                      symmetric(system.e(), tol.sym_tol)};
  if (!rep.symmetric_ok.a) rep.messages.push_back("A is not symmetric");
  if (!rep.symmetric_ok.d) rep.messages.push_back("D is not symmetric");
  if (!rep.symmetric_ok.e) rep.messages.push_back("E is not symmetric");

  const DenseMatrix a = system.a().to_dense();
  const DenseMatrix b = system.b().to_dense();
  const DenseMatrix c = system.c().to_dense();
  const DenseMatrix d = system.d().to_dense();
  const DenseMatrix e = system.e().to_dense();
  const DenseMatrix a_sym = 0.5 * (a + a.transpose());
  const DenseMatrix d_sym = 0.5 * (d + d.transpose());
  const DenseMatrix e_sym = 0.5 * (e + e.transpose());

  rep.definiteness_ok = {positive_definite(a_sym, tol.sym_tol),
                         positive_semidefinite(d_sym, tol.sym_tol),
                         positive_semidefinite(e_sym, tol.sym_tol)};
  if (!rep.definiteness_ok.a) rep.messages.push_back("A is not positive definite");
  if (!rep.definiteness_ok.d) rep.messages.push_back("D is not positive semidefinite");
  if (!rep.definiteness_ok.e) rep.messages.push_back("E is not positive semidefinite");

  rep.kernel_conditions[0] = numerical_rank(stack({a_sym, b}), tol.rank_tol) == dims.n;
  rep.kernel_conditions[1] =
      numerical_rank(stack({DenseMatrix(b.transpose()), d_sym, c}), tol.rank_tol) == dims.m;
  rep.kernel_conditions[2] =
      numerical_rank(stack({DenseMatrix(c.transpose()), e_sym}), tol.rank_tol) == dims.p;
  const char* kernel_names[3] = {"ker(A) and ker(B) intersect nontrivially",
                                 "ker(B^T), ker(D) and ker(C) intersect nontrivially",
                                 "ker(C^T) and ker(E) intersect nontrivially"};
  for (int i = 0; i < 3; ++i)
    if (!rep.kernel_conditions[i]) rep.messages.push_back(kernel_names[i]);

  const Index rank_b = numerical_rank(b, tol.rank_tol);
  const Index rank_c = numerical_rank(c, tol.rank_tol);
  rep.b_full_row_rank = rank_b == dims.m;
  rep.c_full_row_rank = rank_c == dims.p;
  rep.c_nullity_k = dims.p - rank_c;

  if (rep.definiteness_ok.a) {
    Eigen::LLT<DenseMatrix> llt_a(a_sym);
    const DenseMatrix la_inv_bt = llt_a.matrixL().solve(DenseMatrix(b.transpose()));
    const DenseMatrix s1 = d_sym + la_inv_bt.transpose() * la_inv_bt;
    rep.schur_definite[0] = positive_definite(s1, tol.sym_tol);
    if (rep.schur_definite[0]) {
      Eigen::LLT<DenseMatrix> llt_s1(s1);
      const DenseMatrix ls_inv_ct = llt_s1.matrixL().solve(DenseMatrix(c.transpose()));
      const DenseMatrix s2 = e_sym + ls_inv_ct.transpose() * ls_inv_ct;
      rep.schur_definite[1] = positive_definite(s2, tol.sym_tol);
    }
  }
  if (!rep.schur_definite[0]) rep.messages.push_back("S1 = D + B A^-1 B^T is not positive definite");
  if (!rep.schur_definite[1]) rep.messages.push_back("S2 = E + C S1^-1 C^T is not positive definite");
  return rep;
}

AssembledMatrix assemble(const DoubleSaddleSystem& system, Layout layout) {
  const Dims dims = system.dims();
  if (layout == Layout::flipped && !(dims.n == dims.m && dims.m == dims.p))
    throw UnsupportedLayoutError("flipped layout needs square coupling blocks (n = m = p)");

  const auto off = offsets_for(dims, layout);
  std::vector<Triplet> entries;
  push_symmetric(entries, system.a(), off[0], 1.0);
  push_symmetric(entries, system.d(), off[1], -1.0);
  push_symmetric(entries, system.e(), off[2], 1.0);
  push_coupling(entries, system.b(), off[1], off[0]);
  push_coupling(entries, system.c(), off[2], off[1]);

  const Index total = dims.total();
  SparseMatrix k(total, total);
  k.setFromTriplets(entries.begin(), entries.end());

  const bool sparse = total > kDenseCutoff || system.a().is_sparse() || system.b().is_sparse() ||
                      system.c().is_sparse();
  AssembledMatrix out;
  out.data = sparse ? StoredMatrix(std::move(k)) : StoredMatrix(DenseMatrix(k));
  out.layout = layout;
  out.block_offsets = off;
  return out;
}

DoubleSaddleSystem unregularized(const DoubleSaddleSystem& system) {
  const Dims dims = system.dims();
  return DoubleSaddleSystem(system.a(), system.b(), system.c(),
                            StoredMatrix::zero(dims.m, dims.m, system.d().is_sparse()),
                            StoredMatrix::zero(dims.p, dims.p, system.e().is_sparse()));
}

std::vector<Index> layout_permutation(Dims dims, Layout from, Layout to) {
  const auto src = offsets_for(dims, from);
  const auto dst = offsets_for(dims, to);
  const std::array<Index, 3> sizes{dims.n, dims.m, dims.p};
  std::vector<Index> perm(static_cast<std::size_t>(dims.total()));
  for (int blk = 0; blk < 3; ++blk)
    for (Index i = 0; i < sizes[blk]; ++i)
      perm[static_cast<std::size_t>(dst[blk] + i)] = src[blk] + i;
  return perm;
}

}  // namespace dsaddle
