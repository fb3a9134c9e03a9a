#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "stabloc/channels.hpp"
#include "stabloc/gd_state.hpp"
#include "stabloc/reduction.hpp"

namespace stabloc {

/// One subclass: the measured neighbours of s that share an identical
/// neighborhood inside s and carry measurement-flipping noise.
struct Subclass {
  std::uint64_t s_neighborhood = 0;   // mask over s-local bit positions
  std::vector<node_t> members;        // original node indices in S''_1
  double flip_parity_product = 1.0;   // prod over members of (1 - 2 q_n)
};

struct SubclassPartition {
  std::size_t n_s = 0;
  std::vector<Subclass> singles;  // index i holds the neighborhood {i} subclass, possibly empty
  std::vector<Subclass> multis;   // non-empty subclasses touching >= 2 nodes of s
  Bits s_dprime;                  // S''_1: noisy measured neighbours of s

  std::size_t enumeration_bits() const { return multis.size(); }
};

/// Pauli-label image of the noise on a measured node after the chain of
/// measurement-rotation and reduction conjugations.
inline int conjugate_axis_through_rotation(std::uint8_t measured_axis, int s) {
  if (s == 0) return 0;
  if (measured_axis == 1) {  // U = H
    if (s == 1) return 3;
    if (s == 3) return 1;
    return 2;
  }
  if (measured_axis == 2) {  // U = RH: 1 -> 2 -> 3 -> 1
    return s == 3 ? 1 : s + 1;
  }
  return s;
}

inline PauliProbs effective_channel_on_measured(const ChannelSpec& spec, std::uint8_t measured_axis,
                                                CliffordTag reduced_tag) {
  PauliProbs in = channel_probs(spec);
  PauliProbs out{0, 0, 0, 0};
  for (int s = 0; s < 4; ++s) {
    int s1 = conjugate_axis_through_rotation(measured_axis, s);
    out[std::size_t(conjugate_pauli(reduced_tag, s1))] += in[std::size_t(s)];
  }
  return out;
}

/// Splits S''_1 into subclasses keyed by the neighborhood inside s. Noise on
/// a measured node flips its Z outcome with probability q_n = q''_1 + q''_2
/// of the conjugated channel; nodes with q_n = 0 drop out entirely.
inline SubclassPartition partition_subclasses(const ReductionResult& rr, const PauliSetup& setup,
                                              const std::vector<ChannelSpec>& noise, std::size_t multi_cap = 20) {
  std::size_t n = rr.reduced.size();
  if (noise.size() != n || setup.size() != n) throw std::invalid_argument("partition_subclasses: size mismatch");
  std::vector<node_t> s_nodes = rr.regions.s.to_vector();
  SubclassPartition part;
  part.n_s = s_nodes.size();
  if (part.n_s > 26) throw std::invalid_argument("partition_subclasses: subsystem too large");
  std::vector<int> s_pos(n, -1);
  for (std::size_t k = 0; k < s_nodes.size(); ++k) s_pos[s_nodes[k]] = int(k);

  part.s_dprime = Bits(n);
  std::map<std::uint64_t, Subclass> groups;
  rr.regions.s1.for_each([&](node_t j) {
    PauliProbs eff = effective_channel_on_measured(noise[j], setup.axes[j], rr.reduced.tags[j]);
    double q_n = flip_probability(eff, 3);
    if (q_n <= 1e-15) return;
    part.s_dprime.set(j);
    std::uint64_t mask = 0;
    (rr.reduced.graph.neighborhood(j) & rr.regions.s).for_each([&](node_t v) {
      mask |= std::uint64_t(1) << s_pos[v];
    });
    auto& sub = groups[mask];
    sub.s_neighborhood = mask;
    sub.members.push_back(j);
    sub.flip_parity_product *= 1.0 - 2.0 * q_n;
  });

  part.singles.resize(part.n_s);
  for (std::size_t i = 0; i < part.n_s; ++i) part.singles[i].s_neighborhood = std::uint64_t(1) << i;
  for (auto& [mask, sub] : groups) {
    if (std::popcount(mask) == 1)
      part.singles[std::size_t(std::countr_zero(mask))] = sub;
    else
      part.multis.push_back(sub);
  }
  if (part.multis.size() > multi_cap)
    throw std::invalid_argument("partition_subclasses: too many multi-node subclasses to enumerate");
  return part;
}

/// Parity weight of one subclass: probability that an odd (parity = 1) or
/// even (parity = 0) number of its members flip.
inline double subclass_parity_probability(const Subclass& sub, int parity) {
  return 0.5 * (1.0 + (parity ? -1.0 : 1.0) * sub.flip_parity_product);
}

/// Mixing probabilities of the graph-diagonal state on s induced by noisy
/// measurements: sums over the 2^D parity assignments of the multi-node
/// subclasses, with the single-node parities forced by the XOR constraint.
inline std::vector<double> mixing_lambda(const SubclassPartition& part) {
  std::size_t n = part.n_s;
  std::vector<double> lam(std::size_t(1) << n, 0.0);
  std::size_t d = part.multis.size();
  std::vector<double> tensor(lam.size());
  for (std::uint64_t gamma = 0; gamma < (std::uint64_t(1) << d); ++gamma) {
    double weight = 1.0;
    std::uint64_t forced = 0;
    for (std::size_t k = 0; k < d; ++k) {
      int bit = int((gamma >> k) & 1);
      weight *= subclass_parity_probability(part.multis[k], bit);
      if (bit) forced ^= part.multis[k].s_neighborhood;
    }
    if (weight == 0.0) continue;
    // tensor over single-node subclasses: entry psi = prod_i P_i(psi_i ^ forced_i)
    tensor[0] = weight;
    std::size_t filled = 1;
    for (std::size_t i = 0; i < n; ++i) {
      int f = int((forced >> i) & 1);
      double p0 = subclass_parity_probability(part.singles[i], f);
      double p1 = subclass_parity_probability(part.singles[i], 1 - f);
      for (std::size_t psi = 0; psi < filled; ++psi) {
        tensor[psi + filled] = tensor[psi] * p1;
        tensor[psi] *= p0;
      }
      filled <<= 1;
    }
    for (std::size_t psi = 0; psi < lam.size(); ++psi) lam[psi] += tensor[psi];
  }
  return lam;
}

inline double mixing_probability(const SubclassPartition& part, std::uint64_t psi) {
  if (psi >> part.n_s) throw std::invalid_argument("mixing_probability: psi out of range");
  return mixing_lambda(part)[psi];
}

/// Full graph-diagonal state on s for a noisy measured graph state: the
/// measurement-induced mixing composed with the reduced-tag-conjugated noise
/// acting on s itself. Valid for all-allowed (gamma-class) setups, where the
/// result is outcome independent up to known Z-string relabelings.
inline GDState noisy_gd_state(const ReductionResult& rr, const PauliSetup& setup,
                              const std::vector<ChannelSpec>& noise) {
  if (!classify_outcomes(rr).gamma)
    throw std::invalid_argument("noisy_gd_state: setup has forbidden outcomes; use the dense oracle path");
  auto pm = measure_graph(rr, 0);
  SubclassPartition part = partition_subclasses(rr, setup, noise);
  GDState mixing(pm.subgraph_on_s, mixing_lambda(part));
  std::vector<ChannelSpec> s_noise;
  std::vector<CliffordTag> s_tags;
  for (node_t v : pm.s_nodes) {
    s_noise.push_back(noise[v]);
    s_tags.push_back(rr.reduced.tags[v]);
  }
  GDState on_s = noise_on_s_gd(pm.subgraph_on_s, s_noise, s_tags);
  return xor_compose(mixing, on_s);
}

}  // namespace stabloc
