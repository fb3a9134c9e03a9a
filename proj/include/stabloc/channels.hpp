#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stabloc/clifford_tag.hpp"

namespace stabloc {

enum class ChannelKind { BF, BPF, PD, DP };

inline const char* channel_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::BF: return "BF";
    case ChannelKind::BPF: return "BPF";
    case ChannelKind::PD: return "PD";
    case ChannelKind::DP: return "DP";
  }
  return "?";
}

/// Single-qubit Pauli channel with strength q and non-Markovianity eps.
/// eps = 0 recovers the Markovian channel. The non-Markovian BF and BPF
/// variants follow the PD form with the damped axis substituted.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::BF;
  double q = 0.0;
  double eps = 0.0;
};

using PauliProbs = std::array<double, 4>;  // indexed by Pauli label 0..3

inline PauliProbs channel_probs(const ChannelSpec& c) {
  if (c.q < 0.0 || c.q > 1.0 || c.eps < 0.0 || c.eps > 1.0)
    throw std::invalid_argument("channel_probs: parameters outside [0,1]");
  PauliProbs p{0.0, 0.0, 0.0, 0.0};
  switch (c.kind) {
    case ChannelKind::BF:
      p[0] = (1.0 - c.q / 2.0) * (1.0 - c.eps * c.q / 2.0);
      p[1] = (c.q / 2.0) * (1.0 + c.eps * (1.0 - c.q / 2.0));
      break;
    case ChannelKind::BPF:
      p[0] = (1.0 - c.q / 2.0) * (1.0 - c.eps * c.q / 2.0);
      p[2] = (c.q / 2.0) * (1.0 + c.eps * (1.0 - c.q / 2.0));
      break;
    case ChannelKind::PD:
      p[0] = (1.0 - c.q / 2.0) * (1.0 - c.eps * c.q / 2.0);
      p[3] = (c.q / 2.0) * (1.0 + c.eps * (1.0 - c.q / 2.0));
      break;
    case ChannelKind::DP:
      p[0] = (1.0 - 3.0 * c.q / 4.0) * (1.0 - 9.0 * c.eps * c.q / 4.0);
      p[1] = p[2] = p[3] = (c.q / 4.0) * (1.0 + 3.0 * c.eps * (1.0 - 3.0 * c.q / 4.0));
      break;
  }
  double sum = p[0] + p[1] + p[2] + p[3];
  if (std::abs(sum - 1.0) > 1e-12) throw std::logic_error("channel_probs: probabilities do not sum to 1");
  for (double v : p)
    if (v < -1e-15)
      throw std::invalid_argument("channel_probs: negative probability (non-Markovian DP outside validity)");
  return p;
}

/// Largest strength for which the channel is a valid probability mixture.
/// Only the non-Markovian DP channel has a restricted window.
inline double channel_validity_limit(ChannelKind kind, double eps) {
  if (kind == ChannelKind::DP && eps > 4.0 / 9.0) return 4.0 / (9.0 * eps);
  return 1.0;
}

/// Pauli label image under conjugation by a node tag, phases dropped.
inline int conjugate_pauli(CliffordTag t, int pauli) { return tag::conjugate_axis(t, pauli); }

/// Channel probabilities seen after conjugating the noise by a node tag:
/// label s moves to position s' = conjugate_pauli(t, s).
inline PauliProbs conjugate_channel(CliffordTag t, const PauliProbs& p) {
  PauliProbs out{0.0, 0.0, 0.0, 0.0};
  for (int s = 0; s < 4; ++s) out[std::size_t(conjugate_pauli(t, s))] += p[std::size_t(s)];
  return out;
}

/// Probability that the channel flips the outcome of a measurement along the
/// given axis: the total weight of Pauli components anticommuting with it.
inline double flip_probability(const PauliProbs& p, int axis) {
  switch (axis) {
    case 1: return p[2] + p[3];
    case 2: return p[1] + p[3];
    case 3: return p[1] + p[2];
    default: throw std::invalid_argument("flip_probability: axis must be 1, 2, or 3");
  }
}

inline double flip_probability(const ChannelSpec& c, int axis) { return flip_probability(channel_probs(c), axis); }

}  // namespace stabloc
