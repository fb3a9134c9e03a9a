#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stabloc/canonical.hpp"
#include "stabloc/dense.hpp"
#include "stabloc/gd_state.hpp"
#include "stabloc/reduction.hpp"

namespace stabloc {

struct SchmidtBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool determined() const { return lower == upper; }
};

/// Lower bound of the Schmidt measure: the maximum GF(2) rank of the
/// off-diagonal adjacency block over all bipartitions.
inline std::size_t schmidt_lower(const Graph& g, std::size_t rank_limit = 24) {
  std::size_t n = g.size();
  if (n < 2) return 0;
  if (n > rank_limit) throw std::invalid_argument("schmidt_lower: size limit exceeded");
  std::size_t best = 0;
  // fix node 0 in part A; ranks are transpose invariant
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << (n - 1)); mask += 2) {
    Bits a(n);
    for (std::size_t b = 0; b < n; ++b)
      if ((mask >> b) & 1) a.set(b);
    if (a.count() == n) continue;
    best = std::max(best, gf2_rank_offdiagonal(g, a));
  }
  return best;
}

/// Exact minimum vertex cover by branch and bound with degree-0/1 reductions.
inline std::size_t min_vertex_cover(const Graph& g) {
  std::size_t n = g.size();
  if (n > 32) throw std::invalid_argument("min_vertex_cover: size limit exceeded");
  std::size_t best = n;

  auto degree_in = [&](node_t v, const Bits& active) {
    return (g.neighborhood(v) & active).count();
  };

  auto solve = [&](auto&& self, Bits active, std::size_t current) -> void {
    if (current >= best) return;
    // reductions
    for (bool changed = true; changed;) {
      changed = false;
      for (node_t v = 0; v < n && current < best; ++v) {
        if (!active.test(v)) continue;
        std::size_t d = degree_in(v, active);
        if (d == 0) {
          active.reset(v);
          changed = true;
        } else if (d == 1) {
          node_t u = node_t((g.neighborhood(v) & active).lowest());
          active.reset(v);
          active.reset(u);
          ++current;
          changed = true;
        }
      }
    }
    if (current >= best) return;
    // find the highest-degree remaining node
    node_t pick = 0;
    std::size_t dmax = 0;
    active.for_each([&](node_t v) {
      std::size_t d = degree_in(v, active);
      if (d > dmax) {
        dmax = d;
        pick = v;
      }
    });
    if (dmax == 0) {
      best = std::min(best, current);
      return;
    }
    // greedy matching as an admissible lower bound
    {
      Bits rem = active;
      std::size_t matching = 0;
      rem.for_each([&](node_t v) {
        if (!rem.test(v)) return;
        Bits nb = g.neighborhood(v) & rem;
        int u = nb.lowest();
        if (u >= 0 && node_t(u) != v) {
          rem.reset(v);
          rem.reset(std::size_t(u));
          ++matching;
        }
      });
      if (current + matching >= best) return;
    }
    Bits take = active;
    take.reset(pick);
    self(self, take, current + 1);
    Bits take_nb = active;
    Bits nb = g.neighborhood(pick) & active;
    take_nb.reset(pick);
    std::size_t added = nb.count();
    nb.for_each([&](node_t u) { take_nb.reset(u); });
    self(self, take_nb, current + added);
  };

  Bits all(n);
  for (node_t v = 0; v < n; ++v) all.set(v);
  solve(solve, all, 0);
  return best;
}

/// Upper bound of the Schmidt measure: Pauli persistency, the minimum over
/// all full-graph Pauli setups of the exact minimum vertex cover of the
/// corresponding reduced graph.
inline std::size_t schmidt_upper(const Graph& g, std::size_t persistency_limit = 10) {
  std::size_t n = g.size();
  if (n > persistency_limit) throw std::invalid_argument("schmidt_upper: size limit exceeded");
  if (n < 2) return 0;
  Bits empty_s(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  std::size_t best = n;
  for (std::size_t code = 0; code < total; ++code) {
    PauliSetup setup(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      setup.axes[i] = std::uint8_t(1 + c % 3);
      c /= 3;
    }
    auto rr = reduce_graph(rotate_setup_to_z(g, setup), empty_s);
    best = std::min(best, min_vertex_cover(rr.reduced.graph));
    if (best == 1 && is_connected(g)) break;  // a connected state cannot go lower
  }
  return best;
}

inline SchmidtBounds schmidt_bounds(const Graph& g) { return {schmidt_lower(g), schmidt_upper(g)}; }

/// Generalized geometric measure of a normalized pure state: one minus the
/// maximal squared Schmidt coefficient over all bipartitions.
inline double ggm_pure(const dense::State& psi) {
  const std::size_t n = std::size_t(std::countr_zero(std::uint64_t(psi.size())));
  if (Eigen::Index(1) << n != psi.size() || n > 12) throw std::invalid_argument("ggm_pure: bad dimension");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::invalid_argument("ggm_pure: state not normalized");
  if (n < 2) return 0.0;
  double max_sq = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << (n - 1)); mask += 2) {
    std::vector<node_t> a_bits, b_bits;
    for (std::size_t b = 0; b < n; ++b) ((mask >> b) & 1 ? a_bits : b_bits).push_back(node_t(b));
    if (b_bits.empty()) continue;
    Eigen::MatrixXcd m(Eigen::Index(1) << a_bits.size(), Eigen::Index(1) << b_bits.size());
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
      Eigen::Index ra = 0, cb = 0;
      for (std::size_t b = 0; b < a_bits.size(); ++b) ra |= ((x >> a_bits[b]) & 1) << b;
      for (std::size_t b = 0; b < b_bits.size(); ++b) cb |= ((x >> b_bits[b]) & 1) << b;
      m(ra, cb) = psi[x];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    double s = svd.singularValues()(0);
    max_sq = std::max(max_sq, s * s);
  }
  return 1.0 - max_sq;
}

/// Negativity across a bipartition: half the trace-norm excess of the
/// partial transpose.
inline double negativity(const dense::Density& rho, const Bits& part_a) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("negativity: density matrix not Hermitian");
  dense::Density pt = dense::partial_transpose(rho, part_a);
  return (dense::trace_norm_hermitian(pt) - 1.0) / 2.0;
}

/// Computational-basis data of an X-shaped density matrix: the diagonal plus
/// the anti-diagonal coherences pairing index v with its bit complement.
struct XStateData {
  std::vector<double> populations;  // size 2^n
  std::vector<double> coherences;   // size 2^{n-1}; entry v pairs (v, ~v), hub bit of v clear
};

/// Converts a graph-diagonal state over a literal star basis graph into its
/// X-state form in the GHZ frame. The hub carries the sign bit; legs map to
/// computational bits 0..n-2 in ascending node order, the hub to bit n-1.
inline XStateData ghzd_x_state(const GDState& gd) {
  std::size_t n = gd.qubits();
  if (n < 2 || n > 26) throw std::invalid_argument("ghzd_x_state: size out of range");
  node_t hub = 0;
  if (n > 2) {
    bool found = false;
    for (node_t v = 0; v < n && !found; ++v)
      if (gd.basis_graph.degree(v) == n - 1) {
        hub = v;
        found = true;
      }
    if (!found) throw std::invalid_argument("ghzd_x_state: basis graph is not a star");
    for (node_t v = 0; v < n; ++v)
      if (v != hub && gd.basis_graph.degree(v) != 1)
        throw std::invalid_argument("ghzd_x_state: basis graph is not a star");
  } else if (gd.basis_graph.edge_count() != 1) {
    throw std::invalid_argument("ghzd_x_state: basis graph is not a star");
  }
  std::vector<node_t> legs;
  for (node_t v = 0; v < n; ++v)
    if (v != hub) legs.push_back(v);

  const std::size_t half = std::size_t(1) << (n - 1);
  XStateData xs;
  xs.populations.assign(std::size_t(1) << n, 0.0);
  xs.coherences.assign(half, 0.0);
  std::vector<double> diff(half, 0.0);
  for (std::size_t psi = 0; psi < gd.lambdas.size(); ++psi) {
    std::size_t v = 0;
    for (std::size_t b = 0; b < legs.size(); ++b)
      if ((psi >> legs[b]) & 1) v |= std::size_t(1) << b;
    int a = int((psi >> hub) & 1);
    double lam = gd.lambdas[psi];
    xs.populations[v] += lam / 2.0;
    xs.populations[(std::size_t(1) << n) - 1 - v] += lam / 2.0;
    diff[v] += (a ? -lam : lam) / 2.0;
  }
  for (std::size_t v = 0; v < half; ++v) xs.coherences[v] = diff[v];
  if (gd.coherence) xs.coherences[0] += *gd.coherence;
  return xs;
}

/// Biseparability test for GHZ-diagonal (equivalently star-graph-diagonal)
/// states: the state carries genuine multiparty entanglement iff the extreme
/// coherence beats the sum of geometric means of the other population pairs.
inline bool ghzd_gme_test(const GDState& gd, double tol = 1e-12) {
  XStateData xs = ghzd_x_state(gd);
  std::size_t half = xs.coherences.size();
  double rhs = 0.0;
  for (std::size_t i = 1; i < half; ++i)
    rhs += std::sqrt(xs.populations[i] * xs.populations[xs.populations.size() - 1 - i]);
  return std::abs(xs.coherences[0]) > rhs + tol;
}

/// Genuine multiparty concurrence of an X state: 2 max_j(0, |coherence_j| -
/// sum of the other pairs' population geometric means).
inline double gmc_x_state(const XStateData& xs) {
  std::size_t half = xs.coherences.size();
  if (xs.populations.size() != 2 * half) throw std::invalid_argument("gmc_x_state: inconsistent sizes");
  double total = 0.0;
  std::vector<double> geo(half);
  for (std::size_t i = 0; i < half; ++i) {
    geo[i] = std::sqrt(xs.populations[i] * xs.populations[xs.populations.size() - 1 - i]);
    total += geo[i];
  }
  double best = 0.0;
  for (std::size_t j = 0; j < half; ++j)
    best = std::max(best, std::abs(xs.coherences[j]) - (total - geo[j]));
  return 2.0 * std::max(0.0, best);
}

inline double gmc(const GDState& gd_star) { return gmc_x_state(ghzd_x_state(gd_star)); }

/// Biseparability criteria for four-qubit states diagonal in the basis of the
/// linear cluster graph with edge qubits 1 and 4. The fidelity array is
/// indexed F[i<<3 | j<<2 | k<<1 | l]. Returns true iff either inequality is
/// violated for some index choice, certifying genuine multiparty entanglement.
inline bool cluster4_gme_test(const std::array<double, 16>& f, double tol = 1e-12) {
  double sum = 0;
  for (double v : f) sum += v;
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("cluster4_gme_test: fidelities must sum to 1");
  auto idx = [](int i, int j, int k, int l) { return std::size_t(i << 3 | j << 2 | k << 1 | l); };
  auto mid_sum = [&](int a, int d) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += f[idx(a, i, j, d)];
    return s;
  };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          double rhs1 = 0.5 * (mid_sum(a, d) + mid_sum(1 - a, d) + mid_sum(a, 1 - d));
          if (f[idx(a, b, c, d)] > rhs1 + tol) return true;
          double rhs2 = rhs1 + 0.5 * mid_sum(1 - a, 1 - d);
          for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu)
              if (f[idx(a, b, c, d)] + f[idx(1 - a, mu, nu, 1 - d)] > rhs2 + tol) return true;
        }
  return false;
}

/// Rewrites a graph-diagonal state onto an isomorphic-after-local-
/// complementation target basis graph, transforming the lambda indices along
/// the way. Used to bring arbitrary orbit members onto the star or linear
/// cluster representatives the biseparability criteria are stated for.
inline GDState map_to_basis(const GDState& gd, const Graph& target) {
  GDState cur = gd;
  for (node_t i : lc_path_to(gd.basis_graph, target)) cur = gd_local_complement(cur, i);
  std::vector<node_t> perm = isomorphism_permutation(cur.basis_graph, target);
  cur = gd_permute(cur, perm);
  if (!(cur.basis_graph == target)) throw std::logic_error("map_to_basis: mapping failed");
  return cur;
}

/// Four-qubit GME test for a graph-diagonal state over any connected basis
/// graph: star-class states use the GHZ-diagonal criterion, the rest of the
/// orbit maps onto the linear cluster criteria.
inline bool gd4_gme_test(const GDState& gd) {
  if (gd.qubits() != 4) throw std::invalid_argument("gd4_gme_test: four qubits required");
  Graph star(4);
  for (node_t i = 1; i < 4; ++i) star.add_edge(0, i);
  std::uint64_t key = canonical_key(gd.basis_graph);
  if (lc_orbit(star).count(key)) return ghzd_gme_test(map_to_basis(gd, star));
  Graph path(4);
  for (node_t i = 0; i + 1 < 4; ++i) path.add_edge(i, i + 1);
  GDState mapped = map_to_basis(gd, path);
  std::array<double, 16> f{};
  for (std::size_t psi = 0; psi < 16; ++psi) {
    // qubit 1..4 = node 0..3; F index has qubit 1 as the top bit
    std::size_t fi = ((psi & 1) << 3) | ((psi >> 1 & 1) << 2) | ((psi >> 2 & 1) << 1) | (psi >> 3 & 1);
    f[fi] = mapped.lambdas[psi];
  }
  return cluster4_gme_test(f);
}

}  // namespace stabloc
