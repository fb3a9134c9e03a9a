#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabloc/attributed_graph.hpp"
#include "stabloc/graph.hpp"

namespace stabloc {

inline Graph linear_graph(std::size_t n) {
  Graph g(n);
  for (node_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

/// Two legs of `rungs` nodes each; node r on leg 0, node rungs + r on leg 1.
inline Graph ladder_graph(std::size_t rungs) {
  Graph g(2 * rungs);
  for (node_t r = 0; r + 1 < rungs; ++r) {
    g.add_edge(r, r + 1);
    g.add_edge(node_t(rungs + r), node_t(rungs + r + 1));
  }
  for (node_t r = 0; r < rungs; ++r) g.add_edge(r, node_t(rungs + r));
  return g;
}

/// rows x cols grid; node (r, c) = r*cols + c.
inline Graph square_graph(std::size_t rows, std::size_t cols) {
  Graph g(rows * cols);
  auto at = [&](std::size_t r, std::size_t c) { return node_t(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(at(r, c), at(r, c + 1));
      if (r + 1 < rows) g.add_edge(at(r, c), at(r + 1, c));
    }
  return g;
}

inline Graph cubic_graph(std::size_t nx, std::size_t ny, std::size_t nz) {
  Graph g(nx * ny * nz);
  auto at = [&](std::size_t x, std::size_t y, std::size_t z) { return node_t((x * ny + y) * nz + z); };
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) {
        if (x + 1 < nx) g.add_edge(at(x, y, z), at(x + 1, y, z));
        if (y + 1 < ny) g.add_edge(at(x, y, z), at(x, y + 1, z));
        if (z + 1 < nz) g.add_edge(at(x, y, z), at(x, y, z + 1));
      }
  return g;
}

// ---------------------------------------------------------------------------
// Toric code on an n_p x n_p periodic square lattice, 2 n_p^2 qubits on the
// edges. The stabilizer state is mapped onto a graph state by Hadamards on a
// control set derived from a binary symplectic tableau, giving a tagged graph
// with (tensor tags)|G> equal to the code state.
// ---------------------------------------------------------------------------

/// Qubit layout: horizontal edge h(i,j) runs from vertex (i,j) to (i,j+1) and
/// has index i*n_p + j; vertical edge v(i,j) runs from (i,j) to (i+1,j) and
/// has index n_p^2 + i*n_p + j. Indices are periodic in both directions.
struct ToricLayout {
  std::size_t n_p;
  std::size_t qubits() const { return 2 * n_p * n_p; }
  node_t h(std::size_t i, std::size_t j) const { return node_t((i % n_p) * n_p + (j % n_p)); }
  node_t v(std::size_t i, std::size_t j) const { return node_t(n_p * n_p + (i % n_p) * n_p + (j % n_p)); }

  /// Vertical non-trivial loop through column j: the support of a Z-type
  /// logical operator, used as the localization subsystem.
  Bits loop(std::size_t j) const {
    Bits s(qubits());
    for (std::size_t i = 0; i < n_p; ++i) s.set(v(i, j));
    return s;
  }
};

namespace detail {

/// Stabilizer generators as binary symplectic rows with sign tracking.
struct Tableau {
  std::size_t n = 0;
  std::vector<Bits> x, z;
  std::vector<int> sign;  // 0: +1, 1: -1

  explicit Tableau(std::size_t qubits) : n(qubits) {}

  void add_row(const std::vector<node_t>& xs, const std::vector<node_t>& zs) {
    Bits bx(n), bz(n);
    for (node_t q : xs) bx.set(q);
    for (node_t q : zs) bz.set(q);
    x.push_back(std::move(bx));
    z.push_back(std::move(bz));
    sign.push_back(0);
  }

  /// row r <- row r * row s, with the Aaronson-Gottesman phase bookkeeping.
  void multiply_row(std::size_t r, std::size_t s) {
    int iexp = 2 * (sign[r] + sign[s]);
    for (std::size_t q = 0; q < n; ++q) {
      int x1 = x[s].test(q), z1 = z[s].test(q);
      int x2 = x[r].test(q), z2 = z[r].test(q);
      if (x1 && z1)
        iexp += z2 - x2;
      else if (x1)
        iexp += z2 * (2 * x2 - 1);
      else if (z1)
        iexp += x2 * (1 - 2 * z2);
    }
    iexp = ((iexp % 4) + 4) % 4;
    if (iexp % 2) throw std::logic_error("tableau: anticommuting row product");
    sign[r] = iexp / 2;
    x[r] ^= x[s];
    z[r] ^= z[s];
  }

  void hadamard(node_t q) {
    for (std::size_t r = 0; r < x.size(); ++r) {
      bool xb = x[r].test(q), zb = z[r].test(q);
      if (xb && zb) sign[r] ^= 1;  // H Y H = -Y
      if (xb != zb) {
        x[r].flip(q);
        z[r].flip(q);
      }
    }
  }
};

}  // namespace detail

/// The toric-code stabilizer state expressed as a tagged graph state, with
/// the derived control set (Hadamard-tagged qubits) and a designated loop.
struct ToricGraphState {
  ToricLayout layout;
  AttributedGraph state;  // (tensor tags)|graph> equals the code state
  Bits controls;          // qubits carrying an H-family tag
};

/// Builds the graph-state form of the toric code with the logical sector
/// pinned by the Z loops along the chosen vertical columns (all vertical
/// column loops carry the same logical operator, so any number can be
/// designated) and the Z loop on horizontal row 0. Column ordering is chosen
/// so that each designated loop's hub is pivoted through the Z-loop logical
/// itself, which forces the loop to reduce to a star around its hub.
inline ToricGraphState toric_graph_state(std::size_t n_p, const std::vector<std::size_t>& loop_cols = {0},
                                         std::size_t hub_i = 0) {
  if (n_p < 2) throw std::invalid_argument("toric_graph_state: lattice must be at least 2x2");
  if (loop_cols.empty()) throw std::invalid_argument("toric_graph_state: at least one loop required");
  ToricLayout lay{n_p};
  const std::size_t nq = lay.qubits();
  detail::Tableau tab(nq);

  // vertex operators (all but one are independent)
  for (std::size_t i = 0; i < n_p; ++i)
    for (std::size_t j = 0; j < n_p; ++j) {
      if (i == 0 && j == 0) continue;
      tab.add_row({lay.h(i, j), lay.h(i, j + n_p - 1), lay.v(i, j), lay.v(i + n_p - 1, j)}, {});
    }
  // plaquette operators
  for (std::size_t i = 0; i < n_p; ++i)
    for (std::size_t j = 0; j < n_p; ++j) {
      if (i == 0 && j == 0) continue;
      tab.add_row({}, {lay.h(i, j), lay.h(i + 1, j), lay.v(i, j), lay.v(i, j + 1)});
    }
  // logical sector: +1 for the vertical Z loop (all vertical column loops
  // are plaquette-equivalent, so pinning one pins them all) and for the
  // Z loop on horizontal row 0
  {
    std::vector<node_t> zs;
    for (std::size_t i = 0; i < n_p; ++i) zs.push_back(lay.v(i, loop_cols[0]));
    tab.add_row({}, zs);
  }
  {
    std::vector<node_t> zs;
    for (std::size_t i = 0; i < n_p; ++i) zs.push_back(lay.h(0, i));
    tab.add_row({}, zs);
  }
  if (tab.x.size() != nq) throw std::logic_error("toric_graph_state: generator count mismatch");

  Bits all_loops(nq);
  std::vector<node_t> hubs;
  for (std::size_t col : loop_cols) {
    all_loops |= lay.loop(col);
    hubs.push_back(lay.v(hub_i, col));
  }
  Bits hubset(nq);
  for (node_t h : hubs) hubset.set(h);

  // process legs first (they must pivot without a Hadamard), then the hubs
  // (forced Hadamard), then everything else
  std::vector<node_t> order;
  all_loops.for_each([&](node_t q) {
    if (!hubset.test(q)) order.push_back(q);
  });
  for (node_t h : hubs) order.push_back(h);
  for (node_t q = 0; q < nq; ++q)
    if (!all_loops.test(q)) order.push_back(q);

  const std::size_t nrows = tab.x.size();
  std::vector<bool> hset(nq, false);
  std::vector<std::size_t> pivot_row(nq);
  std::vector<bool> used(nrows, false);
  for (node_t q : order) {
    auto find_x = [&] {
      for (std::size_t r = 0; r < nrows; ++r)
        if (!used[r] && tab.x[r].test(q)) return int(r);
      return -1;
    };
    int r = hubset.test(q) ? -1 : find_x();  // force the Hadamard route for hubs
    if (r < 0) {
      tab.hadamard(q);
      hset[q] = true;
      r = find_x();
      if (r < 0) throw std::logic_error("toric_graph_state: tableau not full rank");
    }
    used[std::size_t(r)] = true;
    pivot_row[q] = std::size_t(r);
    for (std::size_t s = 0; s < nrows; ++s)
      if (s != std::size_t(r) && tab.x[s].test(q)) tab.multiply_row(s, std::size_t(r));
  }
  // any unused rows must be pure identity (the dependent extras)
  for (std::size_t r = 0; r < nrows; ++r)
    if (!used[r] && (tab.x[r].any() || tab.z[r].any()))
      throw std::logic_error("toric_graph_state: dependent row did not cancel");

  // assemble the graph and the node tags
  Graph g(nq);
  std::vector<CliffordTag> tags(nq, CliffordTag::I);
  for (node_t q = 0; q < nq; ++q) {
    std::size_t r = pivot_row[q];
    if (tab.x[r].count() != 1 || !tab.x[r].test(q))
      throw std::logic_error("toric_graph_state: X block not reduced to identity");
    bool self_z = tab.z[r].test(q);
    if (self_z) {
      // Y on the pivot qubit: clear it with an S^dag on the state
      for (std::size_t s = 0; s < nq; ++s) {
        if (!tab.x[s].test(q)) continue;
        if (!tab.z[s].test(q)) tab.sign[s] ^= 1;
        tab.z[s].flip(q);
      }
      tags[q] = tag::make(hset[q], true, false);
    } else {
      tags[q] = tag::make(hset[q], false, false);
    }
  }
  for (node_t q = 0; q < nq; ++q) {
    std::size_t r = pivot_row[q];
    tab.z[r].for_each([&](node_t j) {
      if (j == q) throw std::logic_error("toric_graph_state: residual diagonal entry");
      if (j > q) {
        if (!tab.z[pivot_row[j]].test(q)) throw std::logic_error("toric_graph_state: adjacency not symmetric");
        g.add_edge(q, j);
      }
    });
    if (tab.sign[r]) tags[q] = tag::flip_sign(tags[q]);
  }

  ToricGraphState out{lay, AttributedGraph(std::move(g), std::move(tags)), Bits(nq)};
  for (node_t q = 0; q < nq; ++q)
    if (tag::fill_white(out.state.tags[q])) out.controls.set(q);
  return out;
}

}  // namespace stabloc
