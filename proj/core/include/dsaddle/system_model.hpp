#pragma once

#include "dsaddle/stored_matrix.hpp"

#include <array>
#include <string>
#include <vector>

namespace dsaddle {

struct Dims {
  Index n = 0;
  Index m = 0;
  Index p = 0;

  Index total() const { return n + m + p; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Relative tolerances shared by validation and rank decisions.
struct Tolerances {
  double sym_tol = 1e-12;   ///< relative, max-norm
  double rank_tol = 1e-10;  ///< relative to the largest singular value
};

/// The five blocks of
///
///     [ A  B^T  0  ]
///     [ B  -D   C^T]
///     [ 0   C   E  ]
///
/// with A (n x n), B (m x n), C (p x m), D (m x m), E (p x p).
/// Construction only checks shapes; definiteness lives in validate().
class DoubleSaddleSystem {
 public:
  DoubleSaddleSystem(StoredMatrix a, StoredMatrix b, StoredMatrix c, StoredMatrix d,
                     StoredMatrix e);

  /// Dense blocks, stored sparse when the total dimension exceeds kDenseCutoff.
  static DoubleSaddleSystem from_dense(const DenseMatrix& a, const DenseMatrix& b,
                                       const DenseMatrix& c, const DenseMatrix& d,
                                       const DenseMatrix& e);

  const StoredMatrix& a() const { return a_; }
  const StoredMatrix& b() const { return b_; }
  const StoredMatrix& c() const { return c_; }
  const StoredMatrix& d() const { return d_; }
  const StoredMatrix& e() const { return e_; }

  Dims dims() const { return dims_; }

 private:
  StoredMatrix a_, b_, c_, d_, e_;
  Dims dims_;
};

enum class Layout {
  standard,    ///< (x, y, z): A, -D, E on the diagonal
  flipped,     ///< (z, y, x): E, -D, A on the diagonal; square blocks only
  two_by_two,  ///< (x, z | y): [[A, 0, B^T], [0, E, C], [B, C^T, -D]]
};

std::string to_string(Layout layout);
Layout layout_from_string(const std::string& name);

struct AssembledMatrix {
  StoredMatrix data;
  Layout layout = Layout::standard;
  /// Starting row of the x, y and z unknowns in this ordering.
  std::array<Index, 3> block_offsets{};
};

struct ValidationReport {
  struct Flags {
    bool a = false;
    bool d = false;
    bool e = false;
  };

  Flags symmetric_ok;
  Flags definiteness_ok;  ///< A positive definite, D and E positive semidefinite
  /// ker(A)∩ker(B), ker(B^T)∩ker(D)∩ker(C), ker(C^T)∩ker(E) trivial.
  std::array<bool, 3> kernel_conditions{};
  std::array<bool, 2> schur_definite{};
  bool b_full_row_rank = false;
  bool c_full_row_rank = false;
  Index c_nullity_k = 0;  ///< p - rank(C), the nullity of C^T
  std::vector<std::string> messages;

  /// Everything needed for the bound theory: symmetric blocks, A SPD,
  /// D/E PSD, both Schur complements definite.
  bool ok() const;
};

/// Throws StructuralError naming the block whose shape is wrong.
void check_dimensions(const StoredMatrix& a, const StoredMatrix& b, const StoredMatrix& c,
                      const StoredMatrix& d, const StoredMatrix& e);

ValidationReport validate(const DoubleSaddleSystem& system, const Tolerances& tol = {});

AssembledMatrix assemble(const DoubleSaddleSystem& system, Layout layout = Layout::standard);

/// Copy with D and E replaced by zeros.
DoubleSaddleSystem unregularized(const DoubleSaddleSystem& system);

/// Row permutation taking `from` ordering to `to` ordering: out[i] = in[perm[i]].
std::vector<Index> layout_permutation(Dims dims, Layout from, Layout to);

}  // namespace dsaddle
