#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "stabloc/graph.hpp"

namespace stabloc {

/// Packed adjacency key for labeled graphs on up to 8 nodes: bit i*8+j set
/// iff edge (i,j) exists. Unique per labeled graph.
inline std::uint64_t adjacency_key(const Graph& g) {
  if (g.size() > 8) throw std::invalid_argument("adjacency_key: more than 8 nodes");
  std::uint64_t key = 0;
  for (auto [i, j] : g.edges()) {
    key |= std::uint64_t(1) << (i * 8 + j);
    key |= std::uint64_t(1) << (j * 8 + i);
  }
  return key;
}

/// Canonical isomorphism representative: the lexicographically minimal packed
/// adjacency over all node permutations. Exhaustive by construction, so it is
/// capped at 8 nodes; larger inputs are rejected rather than approximated.
inline std::uint64_t canonical_key(const Graph& g, std::size_t limit = 8) {
  std::size_t n = g.size();
  if (n > limit || n > 8) throw std::invalid_argument("canonical_key: size limit exceeded");
  std::vector<node_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto es = g.edges();
  std::uint64_t best = ~std::uint64_t(0);
  do {
    std::uint64_t key = 0;
    for (auto [i, j] : es) {
      key |= std::uint64_t(1) << (perm[i] * 8 + perm[j]);
      key |= std::uint64_t(1) << (perm[j] * 8 + perm[i]);
    }
    best = std::min(best, key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  return canonical_key(a) == canonical_key(b);
}

/// Finds a node permutation p with b.has_edge(p[i], p[j]) == a.has_edge(i, j),
/// by exhaustive search (n <= 8). Throws if the graphs are not isomorphic.
inline std::vector<node_t> isomorphism_permutation(const Graph& a, const Graph& b) {
  std::size_t n = a.size();
  if (b.size() != n || n > 8) throw std::invalid_argument("isomorphism_permutation: bad input");
  std::vector<node_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (node_t i = 0; i < n && ok; ++i)
      for (node_t j = i + 1; j < n && ok; ++j)
        if (a.has_edge(i, j) != b.has_edge(perm[i], perm[j])) ok = false;
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw std::invalid_argument("isomorphism_permutation: graphs are not isomorphic");
}

/// Orbit of a graph under local complementation at every node, with members
/// reduced to canonical isomorphism representatives.
inline std::set<std::uint64_t> lc_orbit(const Graph& g, std::size_t node_limit = 8) {
  if (g.size() > node_limit) throw std::invalid_argument("lc_orbit: size limit exceeded");
  std::set<std::uint64_t> seen;
  std::vector<Graph> frontier{g};
  seen.insert(canonical_key(g));
  while (!frontier.empty()) {
    std::vector<Graph> next;
    for (const Graph& cur : frontier) {
      for (node_t i = 0; i < cur.size(); ++i) {
        Graph imaged = local_complement(cur, i);
        if (seen.insert(canonical_key(imaged)).second) next.push_back(std::move(imaged));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

/// Breadth-first search from `from` over local complementations until a graph
/// isomorphic to `target` appears. Returns the sequence of complemented nodes.
inline std::vector<node_t> lc_path_to(const Graph& from, const Graph& target) {
  std::uint64_t goal = canonical_key(target);
  struct Entry {
    Graph g;
    std::vector<node_t> path;
  };
  std::set<std::uint64_t> seen{adjacency_key(from)};
  std::vector<Entry> frontier{{from, {}}};
  if (canonical_key(from) == goal) return {};
  for (int depth = 0; depth < 64 && !frontier.empty(); ++depth) {
    std::vector<Entry> next;
    for (auto& e : frontier) {
      for (node_t i = 0; i < e.g.size(); ++i) {
        Graph imaged = local_complement(e.g, i);
        if (!seen.insert(adjacency_key(imaged)).second) continue;
        std::vector<node_t> path = e.path;
        path.push_back(i);
        if (canonical_key(imaged) == goal) return path;
        next.push_back({std::move(imaged), std::move(path)});
      }
    }
    frontier = std::move(next);
  }
  throw std::invalid_argument("lc_path_to: target not in the local-complementation orbit");
}

}  // namespace stabloc
