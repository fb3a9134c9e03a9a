#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabloc/bits.hpp"

namespace stabloc {

/// Simple undirected graph over dense node indices 0..n-1, adjacency held as
/// one GF(2) bit row per node in a flat word array. Rows stay symmetric with
/// zero diagonal under every mutating operation.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), nw_(std::max<std::size_t>(1, Bits::word_count(n))), adj_(n * nw_, 0) {}

  static Graph from_edges(std::size_t n, const std::vector<std::pair<node_t, node_t>>& es) {
    Graph g(n);
    for (auto [i, j] : es) g.add_edge(i, j);
    return g;
  }

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return nw_; }

  bool has_edge(node_t i, node_t j) const {
    check_node(i);
    check_node(j);
    return (row(i)[j >> 6] >> (j & 63)) & 1u;
  }

  void add_edge(node_t i, node_t j) {
    check_pair(i, j);
    row(i)[j >> 6] |= std::uint64_t(1) << (j & 63);
    row(j)[i >> 6] |= std::uint64_t(1) << (i & 63);
  }
  void remove_edge(node_t i, node_t j) {
    check_pair(i, j);
    row(i)[j >> 6] &= ~(std::uint64_t(1) << (j & 63));
    row(j)[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }
  void toggle_edge(node_t i, node_t j) {
    check_pair(i, j);
    row(i)[j >> 6] ^= std::uint64_t(1) << (j & 63);
    row(j)[i >> 6] ^= std::uint64_t(1) << (i & 63);
  }

  std::size_t degree(node_t i) const {
    check_node(i);
    std::size_t c = 0;
    for (std::size_t k = 0; k < nw_; ++k) c += std::popcount(row(i)[k]);
    return c;
  }

  Bits neighborhood(node_t i) const {
    check_node(i);
    Bits b(n_);
    std::copy_n(row(i), nw_, b.words().begin());
    return b;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (node_t i = 0; i < n_; ++i) c += degree(i);
    return c / 2;
  }

  std::vector<std::pair<node_t, node_t>> edges() const {
    std::vector<std::pair<node_t, node_t>> es;
    for (node_t i = 0; i < n_; ++i)
      neighborhood(i).for_each([&](node_t j) {
        if (i < j) es.emplace_back(i, j);
      });
    return es;
  }

  /// Toggles every edge among the neighborhood of i; the graph-level local
  /// complementation kernel. Returns the number of toggled pairs.
  std::size_t complement_neighborhood(node_t i) {
    check_node(i);
    Bits nb = neighborhood(i);
    std::size_t d = nb.count();
    nb.for_each([&](node_t j) {
      for (std::size_t k = 0; k < nw_; ++k) row(j)[k] ^= nb.words()[k];
      row(j)[j >> 6] &= ~(std::uint64_t(1) << (j & 63));  // keep diagonal clear
    });
    return d * (d - 1) / 2;
  }

  /// Deletes every edge incident to i.
  void isolate(node_t i) {
    check_node(i);
    Bits nb = neighborhood(i);
    nb.for_each([&](node_t j) { row(j)[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); });
    std::fill_n(row(i), nw_, 0);
  }

  bool operator==(const Graph&) const = default;

  /// Checks symmetry and zero diagonal; throws on violation.
  void validate() const {
    for (node_t i = 0; i < n_; ++i) {
      if (has_edge(i, i)) throw std::invalid_argument("graph: self-loop at node " + std::to_string(i));
      for (node_t j = i + 1; j < n_; ++j)
        if (has_edge(i, j) != has_edge(j, i)) throw std::invalid_argument("graph: asymmetric adjacency");
    }
  }

private:
  void check_node(node_t i) const {
    if (i >= n_) throw std::out_of_range("graph: node index " + std::to_string(i) + " out of range");
  }
  void check_pair(node_t i, node_t j) const {
    check_node(i);
    check_node(j);
    if (i == j) throw std::invalid_argument("graph: self-loop rejected");
  }

  std::uint64_t* row(node_t i) { return adj_.data() + std::size_t(i) * nw_; }
  const std::uint64_t* row(node_t i) const { return adj_.data() + std::size_t(i) * nw_; }

  std::size_t n_ = 0;
  std::size_t nw_ = 1;
  std::vector<std::uint64_t> adj_;
};

inline Graph local_complement(Graph g, node_t i) {
  g.complement_neighborhood(i);
  return g;
}

/// Local complementation along an existing edge: O_i(O_j(O_i(g))).
inline Graph local_complement_edge(Graph g, node_t i, node_t j) {
  if (!g.has_edge(i, j)) throw std::invalid_argument("local_complement_edge: edge absent");
  g.complement_neighborhood(i);
  g.complement_neighborhood(j);
  g.complement_neighborhood(i);
  return g;
}

inline std::vector<Bits> connected_components(const Graph& g) {
  std::size_t n = g.size();
  std::vector<Bits> comps;
  Bits seen(n);
  for (node_t s = 0; s < n; ++s) {
    if (seen.test(s)) continue;
    Bits comp(n), frontier(n);
    comp.set(s);
    frontier.set(s);
    while (frontier.any()) {
      Bits next(n);
      frontier.for_each([&](node_t v) { next |= g.neighborhood(v); });
      frontier = next ^ (next & comp);
      comp |= next;
    }
    seen |= comp;
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool is_connected(const Graph& g) { return g.size() <= 1 || connected_components(g).size() == 1; }

/// Connectivity of the subgraph induced on mask s (edges outside s ignored).
inline bool induced_connected(const Graph& g, const Bits& s) {
  std::size_t total = s.count();
  if (total <= 1) return true;
  int start = s.lowest();
  Bits comp(g.size()), frontier(g.size());
  comp.set(std::size_t(start));
  frontier.set(std::size_t(start));
  while (frontier.any()) {
    Bits next(g.size());
    frontier.for_each([&](node_t v) { next |= g.neighborhood(v); });
    next &= s;
    frontier = next ^ (next & comp);
    comp |= next;
  }
  return comp.count() == total;
}

/// Subgraph induced on s, re-indexed by ascending original node index.
/// If order is non-null it receives the original index of each new node.
inline Graph induced_subgraph(const Graph& g, const Bits& s, std::vector<node_t>* order = nullptr) {
  std::vector<node_t> nodes = s.to_vector();
  Graph sub(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (g.has_edge(nodes[a], nodes[b])) sub.add_edge(node_t(a), node_t(b));
  if (order) *order = std::move(nodes);
  return sub;
}

/// GF(2) rank of the off-diagonal adjacency block between part_a and its
/// complement, computed by Gaussian elimination on bit rows.
inline std::size_t gf2_rank_offdiagonal(const Graph& g, const Bits& part_a) {
  if (part_a.size() != g.size()) throw std::invalid_argument("gf2_rank: bipartition size mismatch");
  std::size_t na = part_a.count();
  if (na == 0 || na == g.size()) throw std::invalid_argument("gf2_rank: empty part");
  if (na > 64) return gf2_rank_offdiagonal(g, part_a.complement());  // rank equals its transpose's
  std::vector<node_t> cols = part_a.to_vector();
  Bits part_b = part_a.complement();
  std::vector<std::uint64_t> rows;  // one machine word per row; |A| <= 64 after the swap above
  if (cols.size() > 64) throw std::invalid_argument("gf2_rank: both parts larger than 64");
  part_b.for_each([&](node_t i) {
    std::uint64_t r = 0;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (g.has_edge(i, cols[c])) r |= std::uint64_t(1) << c;
    if (r) rows.push_back(r);
  });
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
    std::uint64_t bit = std::uint64_t(1) << c;
    std::size_t piv = rank;
    while (piv < rows.size() && !(rows[piv] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

}  // namespace stabloc
