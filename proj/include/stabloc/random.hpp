#pragma once

#include <cstdint>

#include "stabloc/graph.hpp"

namespace stabloc {

/// splitmix64: small, fast, and identical output on every platform, which
/// keeps seeded CLI runs byte-reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound).
  std::uint64_t bounded(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool coin() { return next() & 1; }

  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

inline Graph random_graph(std::size_t n, Rng& rng, double edge_prob = 0.5) {
  Graph g(n);
  for (node_t i = 0; i < n; ++i)
    for (node_t j = i + 1; j < n; ++j)
      if (rng.uniform() < edge_prob) g.add_edge(i, j);
  return g;
}

inline Graph random_connected_graph(std::size_t n, Rng& rng, double edge_prob = 0.5) {
  for (;;) {
    Graph g = random_graph(n, rng, edge_prob);
    if (is_connected(g)) return g;
  }
}

}  // namespace stabloc
