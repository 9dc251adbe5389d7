#include "dsaddle/fem.hpp"

#include "dsaddle/errors.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace dsaddle {

namespace {

Index cells_for(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("mesh width h must be positive");
  const double inv = 1.0 / h;
  const Index cells = static_cast<Index>(std::llround(inv));
  if (cells < 2 || std::abs(inv - static_cast<double>(cells)) > 1e-9 * inv) {
    std::ostringstream os;
    os << "1/h must be an integer >= 2, got h = " << h;
    throw ParameterError(os.str());
  }
  return cells;
}

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive");
}

}  // namespace

FemDiscretization q1_discretize(double h) {
  const Index cells = cells_for(h);
  const double hh = 1.0 / static_cast<double>(cells);
  const Index side = cells + 1;

  static constexpr std::array<std::array<double, 4>, 4> kMass{
      {{4, 2, 1, 2}, {2, 4, 2, 1}, {1, 2, 4, 2}, {2, 1, 2, 4}}};
  static constexpr std::array<std::array<double, 4>, 4> kStiff{
      {{4, -1, -2, -1}, {-1, 4, -1, -2}, {-2, -1, 4, -1}, {-1, -2, -1, 4}}};
  const double mass_scale = hh * hh / 36.0;
  const double stiff_scale = 1.0 / 6.0;

  std::vector<Triplet> mt;
  std::vector<Triplet> kt;
  mt.reserve(static_cast<std::size_t>(16 * cells * cells));
  kt.reserve(static_cast<std::size_t>(16 * cells * cells));
  for (Index j = 0; j < cells; ++j) {
    for (Index i = 0; i < cells; ++i) {
      // Counter-clockwise from the lower-left corner.
      const std::array<Index, 4> nodes{j * side + i, j * side + i + 1, (j + 1) * side + i + 1,
                                       (j + 1) * side + i};
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
          mt.emplace_back(nodes[a], nodes[b], mass_scale * kMass[a][b]);
          kt.emplace_back(nodes[a], nodes[b], stiff_scale * kStiff[a][b]);
        }
      }
    }
  }
  FemDiscretization out;
  out.h = hh;
  out.cells = cells;
  out.mass.resize(side * side, side * side);
  out.stiffness.resize(side * side, side * side);
  out.mass.setFromTriplets(mt.begin(), mt.end());
  out.stiffness.setFromTriplets(kt.begin(), kt.end());
  return out;
}

SparseMatrix submatrix(const SparseMatrix& m, const std::vector<Index>& rows,
                       const std::vector<Index>& cols) {
  std::unordered_map<Index, Index> col_pos;
  for (std::size_t j = 0; j < cols.size(); ++j) col_pos[cols[j]] = static_cast<Index>(j);
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (SparseMatrix::InnerIterator it(m, rows[r]); it; ++it) {
      const auto found = col_pos.find(it.col());
      if (found != col_pos.end()) t.emplace_back(static_cast<Index>(r), found->second, it.value());
    }
  }
  SparseMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

std::vector<Index> interior_nodes(Index cells) {
  const Index side = cells + 1;
  std::vector<Index> out;
  for (Index j = 1; j < cells; ++j)
    for (Index i = 1; i < cells; ++i) out.push_back(j * side + i);
  return out;
}

DistributedControl poisson_distributed(double h, double beta) {
  require_beta(beta);
  FemDiscretization fem = q1_discretize(h);
  const std::vector<Index> inner = interior_nodes(fem.cells);
  SparseMatrix mass = submatrix(fem.mass, inner, inner);
  SparseMatrix stiffness = submatrix(fem.stiffness, inner, inner);

  const Index n = static_cast<Index>(inner.size());
  const StoredMatrix m(mass);
  const StoredMatrix k(stiffness);
  const StoredMatrix zero = StoredMatrix::zero(n, n, true);
  DoubleSaddleSystem flipped(m.scaled(beta), m.scaled(-1.0), k, zero, m);
  DoubleSaddleSystem original(m, k, m.scaled(-1.0), zero, m.scaled(beta));
  return DistributedControl{beta,         std::move(fem),     std::move(mass),
                            std::move(stiffness), std::move(flipped), std::move(original)};
}

BoundaryControl poisson_boundary(double h, double beta) {
  require_beta(beta);
  const FemDiscretization fem = q1_discretize(h);
  const Index cells = fem.cells;
  const Index side = cells + 1;
  const double hh = fem.h;

  std::vector<Index> state;
  std::vector<Index> control;
  for (Index j = 1; j < side; ++j) {
    for (Index i = 0; i < side; ++i) {
      state.push_back(j * side + i);
      if (i == 0 || i == cells || j == cells) control.push_back(j * side + i);
    }
  }

  // 1D mass on each controlled edge segment.
  std::vector<Triplet> bt;
  const double edge[2][2] = {{2.0 * hh / 6.0, hh / 6.0}, {hh / 6.0, 2.0 * hh / 6.0}};
  const auto add_edge = [&](Index a, Index b) {
    const Index ends[2] = {a, b};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) bt.emplace_back(ends[x], ends[y], edge[x][y]);
  };
  for (Index j = 0; j < cells; ++j) {
    add_edge(j * side, (j + 1) * side);                  // x = 0
    add_edge(j * side + cells, (j + 1) * side + cells);  // x = 1
  }
  for (Index i = 0; i < cells; ++i) add_edge(cells * side + i, cells * side + i + 1);  // y = 1
  SparseMatrix boundary_full(fem.node_count(), fem.node_count());
  boundary_full.setFromTriplets(bt.begin(), bt.end());

  const SparseMatrix mass = submatrix(fem.mass, state, state);
  const SparseMatrix stiffness = submatrix(fem.stiffness, state, state);
  const SparseMatrix boundary_mass = submatrix(boundary_full, control, control);
  const SparseMatrix coupling = submatrix(boundary_full, state, control);

  const Index n = static_cast<Index>(state.size());
  const StoredMatrix c(SparseMatrix(-SparseMatrix(coupling.transpose())));
  DoubleSaddleSystem system(StoredMatrix(mass), StoredMatrix(stiffness), c,
                            StoredMatrix::zero(n, n, true),
                            StoredMatrix(boundary_mass).scaled(beta));
  return BoundaryControl{beta,     fem,           std::move(state), std::move(control), mass,
                         stiffness, boundary_mass, coupling,         std::move(system)};
}

}  // namespace dsaddle
