#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stabloc/channels.hpp"
#include "stabloc/graph.hpp"

namespace stabloc {

/// Mixed state diagonal in the graph basis {Z^psi |G_S>}. Bit i of a psi
/// index corresponds to node i of the basis graph. The optional coherence
/// holds the single off-diagonal element of GHZ-under-dephasing states,
/// between the all-zeros and all-ones computational strings.
struct GDState {
  Graph basis_graph;
  std::vector<double> lambdas;
  std::optional<double> coherence;

  GDState() = default;
  GDState(Graph g, std::vector<double> l) : basis_graph(std::move(g)), lambdas(std::move(l)) {
    if (lambdas.size() != std::size_t(1) << basis_graph.size())
      throw std::invalid_argument("gd state: lambda length != 2^n");
  }

  std::size_t qubits() const { return basis_graph.size(); }

  void check_normalized(double tol = 1e-12) const {
    double sum = 0;
    for (double v : lambdas) {
      if (v < -tol) throw std::invalid_argument("gd state: negative probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("gd state: probabilities do not sum to 1");
  }
};

namespace detail {

template <class Vec>
inline void wht(Vec& v) {
  const std::size_t dim = v.size();
  for (std::size_t h = 1; h < dim; h <<= 1)
    for (std::size_t base = 0; base < dim; base += 2 * h)
      for (std::size_t off = 0; off < h; ++off) {
        auto a = v[base + off], b = v[base + off + h];
        v[base + off] = a + b;
        v[base + off + h] = a - b;
      }
}

inline std::uint64_t mask_of(const Bits& b) {
  if (b.size() > 64) throw std::invalid_argument("mask_of: more than 64 nodes");
  return b.words().empty() ? 0 : b.words()[0];
}

}  // namespace detail

/// XOR convolution of the lambda vectors: the composition law for
/// independent graph-diagonal noise processes on the same basis graph.
inline GDState xor_compose(const GDState& a, const GDState& b) {
  if (a.lambdas.size() != b.lambdas.size() || !(a.basis_graph == b.basis_graph))
    throw std::invalid_argument("xor_compose: mismatched basis");
  if (a.coherence || b.coherence) throw std::invalid_argument("xor_compose: coherence not composable");
  std::vector<double> fa = a.lambdas, fb = b.lambdas;
  detail::wht(fa);
  detail::wht(fb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  detail::wht(fa);
  double scale = 1.0 / double(fa.size());
  for (auto& v : fa) v *= scale;
  return GDState(a.basis_graph, std::move(fa));
}

/// Graph-diagonal image of per-node Pauli channels acting on |G_S><G_S|.
/// X on node i is the Z-string on its neighborhood, Y adds the node's own Z,
/// so every channel becomes a 4-point distribution over psi-index masks.
inline GDState noise_on_s_gd(const Graph& basis_graph, const std::vector<PauliProbs>& node_probs) {
  std::size_t n = basis_graph.size();
  if (node_probs.size() != n) throw std::invalid_argument("noise_on_s_gd: one channel per node required");
  if (n > 26) throw std::invalid_argument("noise_on_s_gd: size limit exceeded");
  std::vector<double> lam(std::size_t(1) << n, 0.0);
  lam[0] = 1.0;
  std::vector<double> next(lam.size());
  for (node_t i = 0; i < n; ++i) {
    std::uint64_t nb = detail::mask_of(basis_graph.neighborhood(i));
    std::uint64_t self = std::uint64_t(1) << i;
    const std::uint64_t masks[4] = {0, nb, nb ^ self, self};
    const PauliProbs& p = node_probs[i];
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t psi = 0; psi < lam.size(); ++psi) {
      double v = lam[psi];
      if (v == 0.0) continue;
      for (int s = 0; s < 4; ++s)
        if (p[std::size_t(s)] != 0.0) next[psi ^ masks[std::size_t(s)]] += v * p[std::size_t(s)];
    }
    lam.swap(next);
  }
  return GDState(basis_graph, std::move(lam));
}

/// Convenience overload: same channel spec on every node, conjugated by
/// per-node tags before expansion.
inline GDState noise_on_s_gd(const Graph& basis_graph, const std::vector<ChannelSpec>& specs,
                             const std::vector<CliffordTag>& tags) {
  std::size_t n = basis_graph.size();
  if (specs.size() != n || tags.size() != n) throw std::invalid_argument("noise_on_s_gd: size mismatch");
  std::vector<PauliProbs> probs;
  probs.reserve(n);
  for (node_t i = 0; i < n; ++i) probs.push_back(conjugate_channel(tags[i], channel_probs(specs[i])));
  return noise_on_s_gd(basis_graph, probs);
}

/// Local complementation at node i maps the graph basis of G onto the basis
/// of O_i(G) with the index permutation psi -> psi ^ (psi_i ? N_i : 0).
inline GDState gd_local_complement(const GDState& gd, node_t i) {
  if (gd.coherence) throw std::invalid_argument("gd_local_complement: coherence not supported");
  std::uint64_t nb = detail::mask_of(gd.basis_graph.neighborhood(i));
  std::uint64_t self = std::uint64_t(1) << i;
  GDState out(local_complement(gd.basis_graph, i), std::vector<double>(gd.lambdas.size(), 0.0));
  for (std::size_t psi = 0; psi < gd.lambdas.size(); ++psi) {
    std::uint64_t target = (psi & self) ? (psi ^ nb) : psi;
    out.lambdas[target] = gd.lambdas[psi];
  }
  return out;
}

/// Node relabeling: new node perm[i] is old node i.
inline GDState gd_permute(const GDState& gd, const std::vector<node_t>& perm) {
  std::size_t n = gd.qubits();
  if (perm.size() != n) throw std::invalid_argument("gd_permute: permutation size mismatch");
  Graph g(n);
  for (auto [i, j] : gd.basis_graph.edges()) g.add_edge(perm[i], perm[j]);
  GDState out(std::move(g), std::vector<double>(gd.lambdas.size(), 0.0));
  for (std::size_t psi = 0; psi < gd.lambdas.size(); ++psi) {
    std::uint64_t target = 0;
    for (node_t b = 0; b < n; ++b)
      if ((psi >> b) & 1) target |= std::uint64_t(1) << perm[b];
    out.lambdas[target] = gd.lambdas[psi];
  }
  out.coherence = gd.coherence;
  return out;
}

/// Negativity of a graph-diagonal state across a bipartition, computed in
/// the stabilizer group algebra: the partial transpose stays diagonal in the
/// graph basis up to Y-counting signs, so its spectrum is a signed
/// Walsh-Hadamard transform of the lambda vector.
inline double gd_negativity(const GDState& gd, const Bits& part_a) {
  if (gd.coherence) throw std::invalid_argument("gd_negativity: coherence not supported");
  std::size_t n = gd.qubits();
  if (part_a.size() != n) throw std::invalid_argument("gd_negativity: bipartition size mismatch");
  if (part_a.none() || part_a.count() == n) throw std::invalid_argument("gd_negativity: empty part");
  std::vector<double> hat = gd.lambdas;
  detail::wht(hat);
  std::uint64_t amask = detail::mask_of(part_a);
  std::vector<std::uint64_t> rows(n);
  for (node_t j = 0; j < n; ++j) rows[j] = detail::mask_of(gd.basis_graph.neighborhood(j));
  for (std::uint64_t x = 0; x < hat.size(); ++x) {
    // sign (-1)^{#Y in A} of the stabilizer product indexed by x
    std::uint64_t z_pattern = 0;
    for (node_t j = 0; j < n; ++j)
      if (std::popcount(rows[j] & x) & 1) z_pattern |= std::uint64_t(1) << j;
    if (std::popcount(x & z_pattern & amask) & 1) hat[x] = -hat[x];
  }
  detail::wht(hat);
  double sum = 0;
  for (double mu : hat) sum += std::abs(mu);
  sum /= double(hat.size());
  return (sum - 1.0) / 2.0;
}

/// GHZ state of n qubits under (non-Markovian) phase damping on every qubit:
/// populations 1/2 on the all-zeros and all-ones strings and a single
/// coherence (1-f)^n / 2 with f = q [1 + eps (1 - q/2)].
inline GDState ghz_pd_closed_form(std::size_t n_qubits, double q, double eps) {
  if (n_qubits < 2) throw std::invalid_argument("ghz_pd_closed_form: need at least 2 qubits");
  if (q < 0 || q > 1 || eps < 0 || eps > 1) throw std::invalid_argument("ghz_pd_closed_form: parameters outside [0,1]");
  Graph star(n_qubits);
  for (node_t i = 1; i < n_qubits; ++i) star.add_edge(0, i);
  std::vector<double> lam(std::size_t(1) << n_qubits, 0.0);
  lam[0] = 0.5;
  lam[1] = 0.5;  // hub-bit flip: the other extreme computational population
  GDState gd(std::move(star), std::move(lam));
  double f = q * (1.0 + eps * (1.0 - q / 2.0));
  gd.coherence = std::pow(1.0 - f, double(n_qubits)) / 2.0;
  return gd;
}

}  // namespace stabloc
