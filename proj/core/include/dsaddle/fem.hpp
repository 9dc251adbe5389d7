#pragma once

#include "dsaddle/system_model.hpp"

#include <vector>

namespace dsaddle {

/// Bilinear (Q1) mass and stiffness matrices on the uniform N x N grid of
/// the unit square, all (N+1)^2 nodes, no boundary treatment. Node (i, j)
/// at (i h, j h) has index j (N+1) + i.
struct FemDiscretization {
  double h = 0.0;
  Index cells = 0;  ///< N
  SparseMatrix mass;
  SparseMatrix stiffness;

  Index nodes_per_side() const { return cells + 1; }
  Index node_count() const { return nodes_per_side() * nodes_per_side(); }
};

/// Throws ParameterError unless 1/h is an integer >= 2.
FemDiscretization q1_discretize(double h);

/// Rows and columns `rows` x `cols` of `m`.
SparseMatrix submatrix(const SparseMatrix& m, const std::vector<Index>& rows,
                       const std::vector<Index>& cols);

/// Nodes off the boundary of the square.
std::vector<Index> interior_nodes(Index cells);

struct DistributedControl {
  double beta = 0.0;
  FemDiscretization fem;
  SparseMatrix mass;       ///< interior mass matrix
  SparseMatrix stiffness;  ///< interior stiffness, Dirichlet nodes removed
  /// A = beta M, B = -M, C = K, D = 0, E = M: its standard assembly is the
  /// reordered matrix [[beta M, -M, 0], [-M, 0, K], [0, K, M]].
  DoubleSaddleSystem flipped;
  /// A = M, B = K, C = -M, D = 0, E = beta M.
  DoubleSaddleSystem original;
};

/// Distributed Poisson control with homogeneous Dirichlet conditions.
DistributedControl poisson_distributed(double h, double beta);

struct BoundaryControl {
  double beta = 0.0;
  FemDiscretization fem;
  std::vector<Index> state_nodes;     ///< every node except those with y = 0
  std::vector<Index> control_nodes;   ///< state nodes on x = 0, x = 1 or y = 1
  SparseMatrix mass;                  ///< state mass matrix
  SparseMatrix stiffness;             ///< state stiffness, SPD thanks to the Dirichlet edge
  SparseMatrix boundary_mass;         ///< M_b on the control nodes
  SparseMatrix coupling;              ///< E_b: state rows, control columns
  /// A = M, B = K, C = -E_b^T, D = 0, E = beta M_b.
  DoubleSaddleSystem system;
};

/// Boundary Poisson control: Dirichlet condition on y = 0, Neumann control
/// on the other three edges.
BoundaryControl poisson_boundary(double h, double beta);

}  // namespace dsaddle
