#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "stabloc/clifford_tag.hpp"
#include "stabloc/reduction.hpp"

namespace stabloc::dense {

using cx = std::complex<double>;
using State = Eigen::VectorXcd;
using Density = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

constexpr std::size_t kMaxStateQubits = 20;   // statevectors
constexpr std::size_t kMaxDensityQubits = 12; // density matrices

inline Mat2 pauli(int axis) {
  Mat2 m;
  switch (axis) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cx(0, -1), cx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: axis out of range");
  }
  return m;
}

inline Mat2 hadamard() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

inline Mat2 phase_r() {  // R = sqrt(Z)
  Mat2 m;
  m << 1, 0, 0, cx(0, 1);
  return m;
}

inline Mat2 tag_unitary(CliffordTag t) {
  Mat2 m = Mat2::Identity();
  if (tag::has_z(t)) m = pauli(3) * m;
  if (tag::has_r(t)) m = phase_r() * m;
  if (tag::has_h(t)) m = hadamard() * m;
  return m;
}

/// Qubit q corresponds to bit q of the basis index.
inline void apply_1q(State& psi, node_t q, const Mat2& u) {
  const Eigen::Index dim = psi.size();
  const Eigen::Index step = Eigen::Index(1) << q;
  for (Eigen::Index base = 0; base < dim; base += 2 * step)
    for (Eigen::Index off = 0; off < step; ++off) {
      Eigen::Index i0 = base + off, i1 = i0 + step;
      cx a = psi[i0], b = psi[i1];
      psi[i0] = u(0, 0) * a + u(0, 1) * b;
      psi[i1] = u(1, 0) * a + u(1, 1) * b;
    }
}

inline void apply_1q(Density& rho, node_t q, const Mat2& u) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index step = Eigen::Index(1) << q;
  Mat2 ud = u.adjoint();
  for (Eigen::Index col = 0; col < dim; ++col)
    for (Eigen::Index base = 0; base < dim; base += 2 * step)
      for (Eigen::Index off = 0; off < step; ++off) {
        Eigen::Index i0 = base + off, i1 = i0 + step;
        cx a = rho(i0, col), b = rho(i1, col);
        rho(i0, col) = u(0, 0) * a + u(0, 1) * b;
        rho(i1, col) = u(1, 0) * a + u(1, 1) * b;
      }
  for (Eigen::Index rw = 0; rw < dim; ++rw)
    for (Eigen::Index base = 0; base < dim; base += 2 * step)
      for (Eigen::Index off = 0; off < step; ++off) {
        Eigen::Index i0 = base + off, i1 = i0 + step;
        cx a = rho(rw, i0), b = rho(rw, i1);
        rho(rw, i0) = a * ud(0, 0) + b * ud(1, 0);
        rho(rw, i1) = a * ud(0, 1) + b * ud(1, 1);
      }
}

inline State graph_state(const Graph& g) {
  if (g.size() > kMaxStateQubits) throw std::invalid_argument("graph_state: size limit exceeded");
  const Eigen::Index dim = Eigen::Index(1) << g.size();
  State psi = State::Constant(dim, cx(std::pow(2.0, -double(g.size()) / 2.0), 0));
  auto es = g.edges();
  for (Eigen::Index x = 0; x < dim; ++x) {
    int sign = 0;
    for (auto [i, j] : es) sign ^= int((x >> i) & (x >> j) & 1);
    if (sign) psi[x] = -psi[x];
  }
  return psi;
}

/// State represented by an attributed graph: (tensor of tags) |G>.
inline State tagged_state(const AttributedGraph& ag) {
  State psi = graph_state(ag.graph);
  for (node_t q = 0; q < ag.size(); ++q)
    if (ag.tags[q] != CliffordTag::I) apply_1q(psi, q, tag_unitary(ag.tags[q]));
  return psi;
}

inline Density density_from_state(const State& psi) { return psi * psi.adjoint(); }

/// Overlap magnitude |<a|b>|; 1 means equal up to global phase.
inline double overlap(const State& a, const State& b) { return std::abs(cx(a.adjoint() * b)); }

/// Product Pauli channel: each qubit gets its own probability 4-vector.
inline Density apply_channels(Density rho, const std::vector<std::array<double, 4>>& probs) {
  const std::size_t n = std::size_t(std::countr_zero(std::uint64_t(rho.rows())));
  if (probs.size() != n) throw std::invalid_argument("apply_channels: one probability vector per qubit required");
  for (node_t q = 0; q < n; ++q) {
    const auto& p = probs[q];
    double sum = p[0] + p[1] + p[2] + p[3];
    if (std::abs(sum - 1.0) > 1e-12 || p[0] < -1e-15 || p[1] < -1e-15 || p[2] < -1e-15 || p[3] < -1e-15)
      throw std::invalid_argument("apply_channels: invalid probability vector");
    Density acc = Density::Zero(rho.rows(), rho.cols());
    for (int s = 0; s < 4; ++s) {
      if (p[s] == 0.0) continue;
      Density term = rho;
      apply_1q(term, q, pauli(s));
      acc += p[s] * term;
    }
    rho = std::move(acc);
  }
  return rho;
}

inline Density partial_trace_keep(const Density& rho, const Bits& keep) {
  const std::size_t n = std::size_t(std::countr_zero(std::uint64_t(rho.rows())));
  std::vector<node_t> kept = keep.to_vector();
  std::vector<node_t> traced;
  for (node_t q = 0; q < n; ++q)
    if (!keep.test(q)) traced.push_back(q);
  const Eigen::Index dk = Eigen::Index(1) << kept.size();
  const Eigen::Index dt = Eigen::Index(1) << traced.size();
  auto expand = [&](Eigen::Index a, Eigen::Index t) {
    Eigen::Index x = 0;
    for (std::size_t b = 0; b < kept.size(); ++b) x |= ((a >> b) & 1) << kept[b];
    for (std::size_t b = 0; b < traced.size(); ++b) x |= ((t >> b) & 1) << traced[b];
    return x;
  };
  Density out = Density::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b) {
      cx acc = 0;
      for (Eigen::Index t = 0; t < dt; ++t) acc += rho(expand(a, t), expand(b, t));
      out(a, b) = acc;
    }
  return out;
}

/// Projects every measured node onto the outcome eigenstate and returns the
/// outcome probability together with the conditioned reduced state on the
/// unmeasured nodes. Probabilities below 1e-14 flag a forbidden outcome and
/// the state is returned as zero.
inline std::pair<double, Density> project_and_condition(const Density& rho_in, const PauliSetup& setup,
                                                        std::uint64_t outcome) {
  Density rho = rho_in;
  std::vector<node_t> measured = setup.measured().to_vector();
  for (std::size_t k = 0; k < measured.size(); ++k) {
    node_t q = measured[k];
    double s = ((outcome >> k) & 1) ? -1.0 : 1.0;
    Mat2 proj = 0.5 * (pauli(0) + s * pauli(setup.axes[q]));
    apply_1q(rho, q, proj);
  }
  double p = rho.trace().real();
  Bits keep = setup.unmeasured();
  if (p < 1e-14) return {p, Density::Zero(Eigen::Index(1) << keep.count(), Eigen::Index(1) << keep.count())};
  rho /= p;
  return {p, partial_trace_keep(rho, keep)};
}

/// In-place Walsh-Hadamard transform (unnormalized) over vector length 2^n.
template <class Vec>
inline void walsh_hadamard(Vec& v) {
  const Eigen::Index dim = Eigen::Index(v.size());
  for (Eigen::Index h = 1; h < dim; h <<= 1)
    for (Eigen::Index base = 0; base < dim; base += 2 * h)
      for (Eigen::Index off = 0; off < h; ++off) {
        auto a = v[base + off], b = v[base + off + h];
        v[base + off] = a + b;
        v[base + off + h] = a - b;
      }
}

/// Matrix elements of rho in the graph basis {Z^psi |G>}: the change of
/// basis is a diagonal phase followed by a Walsh-Hadamard transform.
inline Density graph_basis_matrix(const Density& rho_s, const Graph& basis_graph) {
  const Eigen::Index dim = rho_s.rows();
  if (dim != Eigen::Index(1) << basis_graph.size())
    throw std::invalid_argument("graph_basis_matrix: dimension mismatch");
  State g = graph_state(basis_graph);
  // B(x,psi) = (-1)^{x.psi} g(x): columns are the graph basis states, so
  // rho_gb = W diag(g*) rho diag(g) W with W the +-1 Walsh matrix.
  Density m = rho_s;
  for (Eigen::Index x = 0; x < dim; ++x)
    for (Eigen::Index y = 0; y < dim; ++y) m(x, y) = std::conj(g[x]) * m(x, y) * g[y];
  for (Eigen::Index col = 0; col < dim; ++col) {
    auto c = m.col(col);
    walsh_hadamard(c);
  }
  for (Eigen::Index row = 0; row < dim; ++row) {
    auto r = m.row(row);
    walsh_hadamard(r);
  }
  return m;
}

/// Diagonal of rho in the graph basis of basis_graph.
inline std::vector<double> graph_basis_fidelities(const Density& rho_s, const Graph& basis_graph) {
  Density m = graph_basis_matrix(rho_s, basis_graph);
  std::vector<double> lam(std::size_t(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) lam[std::size_t(i)] = m(i, i).real();
  return lam;
}

inline double max_offdiagonal(const Density& m) {
  double mx = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) mx = std::max(mx, std::abs(m(i, j)));
  return mx;
}

inline Density partial_transpose(const Density& rho, const Bits& part_a) {
  const std::size_t n = std::size_t(std::countr_zero(std::uint64_t(rho.rows())));
  std::uint64_t amask = 0;
  for (node_t q = 0; q < n; ++q)
    if (part_a.test(q)) amask |= std::uint64_t(1) << q;
  Density out(rho.rows(), rho.cols());
  for (std::uint64_t x = 0; x < std::uint64_t(rho.rows()); ++x)
    for (std::uint64_t y = 0; y < std::uint64_t(rho.cols()); ++y) {
      std::uint64_t xs = (x & ~amask) | (y & amask);
      std::uint64_t ys = (y & ~amask) | (x & amask);
      out(Eigen::Index(x), Eigen::Index(y)) = rho(Eigen::Index(xs), Eigen::Index(ys));
    }
  return out;
}

inline double trace_norm_hermitian(const Density& m) {
  Eigen::SelfAdjointEigenSolver<Density> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace stabloc::dense
