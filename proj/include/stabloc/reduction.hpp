#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stabloc/attributed_graph.hpp"

namespace stabloc {

/// Pauli measurement setup: one axis per measured node (1=X, 2=Y, 3=Z),
/// 0 marks unmeasured nodes (the subsystem the setup localizes onto).
struct PauliSetup {
  std::vector<std::uint8_t> axes;

  PauliSetup() = default;
  explicit PauliSetup(std::size_t n) : axes(n, 0) {}

  std::size_t size() const { return axes.size(); }

  Bits measured() const {
    Bits m(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i)
      if (axes[i]) m.set(i);
    return m;
  }
  Bits unmeasured() const { return measured().complement(); }

  static PauliSetup all_z_except(std::size_t n, const Bits& s) {
    PauliSetup p(n);
    for (std::size_t i = 0; i < n; ++i)
      if (!s.test(i)) p.axes[i] = 3;
    return p;
  }
};

struct Regions {
  Bits s;   // unmeasured nodes
  Bits s1;  // measured nodes adjacent to s in the reduced graph
  Bits s2;  // remaining measured nodes
};

struct ReductionResult {
  AttributedGraph reduced;
  Regions regions;
  std::size_t op_count = 0;
  Bits z_set;  // measured nodes carrying a red tag: measured in Z after reduction

  /// Measured nodes left with an H/HZ tag; they are measured in X and drive
  /// the forbidden-outcome structure.
  Bits white_set() const {
    Bits w(reduced.size());
    regions.s.complement().for_each([&](node_t i) {
      if (tag::fill_white(reduced.tags[i])) w.set(i);
    });
    return w;
  }
};

/// Step A: rotate an arbitrary Pauli setup into Z measurements by tagging
/// X-measured nodes with H and Y-measured nodes with HRZ (the image of
/// (RH)^dag on a fresh node). Connectivity is untouched here.
inline AttributedGraph rotate_setup_to_z(const Graph& g, const PauliSetup& setup, std::size_t* ops = nullptr) {
  if (setup.size() != g.size()) throw std::invalid_argument("rotate_setup_to_z: setup size mismatch");
  AttributedGraph ag((Graph(g)));
  for (node_t j = 0; j < g.size(); ++j) {
    switch (setup.axes[j]) {
      case 0:
      case 3: break;
      case 1: apply_clifford_tag(ag, j, CliffordGen::H, ops); break;
      case 2:
        apply_clifford_tag(ag, j, CliffordGen::Z, ops);
        apply_clifford_tag(ag, j, CliffordGen::R, ops);
        apply_clifford_tag(ag, j, CliffordGen::H, ops);
        break;
      default: throw std::invalid_argument("rotate_setup_to_z: axis outside {1,2,3}");
    }
  }
  return ag;
}

namespace detail {

inline bool is_white_diamond(CliffordTag t) { return tag::fill_white(t) && tag::shape_diamond(t); }
inline bool is_white_circle(CliffordTag t) { return tag::fill_white(t) && !tag::shape_diamond(t); }

}  // namespace detail

/// Step B: drive the tagged graph to the reduced form satisfying
///   P1: measured nodes carry no white diamond,
///   P2: measured nodes adjacent to s are red,
///   P3: no link joins two white-circle measured nodes.
/// White diamonds are cleared in ascending node order, white-circle links in
/// lexicographic edge order, boundary offenders one at a time, re-scanning
/// after every pass. Unmeasured nodes may end up with any tag; those tags are
/// part of the correction unitary.
inline ReductionResult reduce_graph(AttributedGraph ag, const Bits& s, std::size_t rotation_ops = 0) {
  const std::size_t n = ag.size();
  if (s.size() != n) throw std::invalid_argument("reduce_graph: subsystem mask size mismatch");
  std::size_t ops = rotation_ops;
  const std::size_t cap = 4 * n * n + 16;
  std::size_t moves = 0;
  auto spend = [&] {
    if (++moves > cap) throw std::runtime_error("reduce_graph: equivalence-move cap exceeded (internal error)");
  };

  Bits s_prime = s.complement();
  for (;;) {
    // Step 1 fixed point over the measured region.
    for (bool changed = true; changed;) {
      changed = false;
      for (node_t i = 0; i < n; ++i) {
        if (s_prime.test(i) && detail::is_white_diamond(ag.tags[i])) {
          apply_b1(ag, i, &ops);
          spend();
          changed = true;
        }
      }
      for (node_t i = 0; i < n; ++i) {
        if (!s_prime.test(i) || !detail::is_white_circle(ag.tags[i])) continue;
        Bits nb = ag.graph.neighborhood(i);
        for (node_t j = i + 1; j < n; ++j) {
          if (nb.test(j) && s_prime.test(j) && detail::is_white_circle(ag.tags[j]) &&
              detail::is_white_circle(ag.tags[i])) {
            apply_b2(ag, i, j, &ops);
            spend();
            changed = true;
          }
          if (!detail::is_white_circle(ag.tags[i])) break;
        }
      }
    }

    // Step 2: clear one white circle sitting on the boundary of s.
    node_t bi = 0, bj = 0;
    bool found = false;
    for (node_t i = 0; i < n && !found; ++i) {
      if (!s_prime.test(i) || !detail::is_white_circle(ag.tags[i])) continue;
      Bits nb = ag.graph.neighborhood(i) & s;
      int j = nb.lowest();
      if (j >= 0) {
        bi = i;
        bj = node_t(j);
        found = true;
      }
    }
    if (!found) break;
    if (!tag::shape_diamond(ag.tags[bj])) {
      apply_b2(ag, bi, bj, &ops);
      spend();
    } else {
      apply_b1(ag, bj, &ops);
      spend();
      if (!detail::is_white_diamond(ag.tags[bi]))
        throw std::runtime_error("reduce_graph: boundary node not reshaped as expected (internal error)");
      apply_b1(ag, bi, &ops);
      spend();
    }
  }

  ReductionResult rr;
  rr.reduced = std::move(ag);
  rr.op_count = ops;
  rr.regions.s = s;
  Bits s1(n);
  s.for_each([&](node_t v) { s1 |= rr.reduced.graph.neighborhood(v); });
  s1 &= s_prime;
  rr.regions.s1 = s1;
  rr.regions.s2 = s_prime ^ s1;
  rr.z_set = Bits(n);
  s_prime.for_each([&](node_t i) {
    if (!tag::fill_white(rr.reduced.tags[i])) rr.z_set.set(i);
  });

  // P1-P3 are structural postconditions; violation means an internal bug.
  rr.regions.s1.for_each([&](node_t i) {
    if (tag::fill_white(rr.reduced.tags[i])) throw std::runtime_error("reduce_graph: P2 violated");
  });
  rr.regions.s2.for_each([&](node_t i) {
    if (detail::is_white_diamond(rr.reduced.tags[i])) throw std::runtime_error("reduce_graph: P1 violated");
    if (detail::is_white_circle(rr.reduced.tags[i])) {
      Bits nb = rr.reduced.graph.neighborhood(i);
      nb.for_each([&](node_t j) {
        if (s_prime.test(j) && tag::fill_white(rr.reduced.tags[j]))
          throw std::runtime_error("reduce_graph: P3 violated");
        if (s.test(j)) throw std::runtime_error("reduce_graph: white circle still on the boundary");
      });
    }
  });
  return rr;
}

/// Outcome bitstrings use bit 0 <-> eigenvalue +1 and bit 1 <-> -1, packed
/// over measured nodes in ascending node order.
struct OutcomeClassification {
  bool gamma = true;                     // true: every outcome allowed, uniform 2^-|S'|
  std::vector<std::uint64_t> forbidden;  // materialized only for gamma-bar setups
};

/// A white node's X outcome is forced by the Z outcomes of its neighbours:
/// the sign cascade fixes it to (tag sign) xor (parity of -1 outcomes in its
/// neighborhood). Everything violating one of those constraints is forbidden.
inline OutcomeClassification classify_outcomes(const ReductionResult& rr, std::size_t enumerate_limit = 22) {
  OutcomeClassification oc;
  Bits whites = rr.white_set();
  if (whites.none()) return oc;
  oc.gamma = false;
  std::vector<node_t> measured = rr.regions.s.complement().to_vector();
  if (measured.size() > enumerate_limit)
    throw std::invalid_argument("classify_outcomes: measured region too large to enumerate");
  std::vector<int> pos(rr.reduced.size(), -1);
  for (std::size_t k = 0; k < measured.size(); ++k) pos[measured[k]] = int(k);

  struct Constraint {
    std::uint64_t mask;  // neighbour positions
    std::uint64_t self;  // the white node's own position bit
    int offset;          // tag sign: 1 if HZ
  };
  std::vector<Constraint> cons;
  whites.for_each([&](node_t w) {
    Constraint c{0, std::uint64_t(1) << pos[w], tag::sign_minus(rr.reduced.tags[w]) ? 1 : 0};
    rr.reduced.graph.neighborhood(w).for_each([&](node_t a) { c.mask |= std::uint64_t(1) << pos[a]; });
    cons.push_back(c);
  });
  std::uint64_t total = std::uint64_t(1) << measured.size();
  for (std::uint64_t k = 0; k < total; ++k) {
    for (const auto& c : cons) {
      int forced = (std::popcount(k & c.mask) + c.offset) & 1;
      if (int((k & c.self) != 0) != forced) {
        oc.forbidden.push_back(k);
        break;
      }
    }
  }
  return oc;
}

struct PostMeasurement {
  Graph subgraph_on_s;                 // the graph on s, re-indexed ascending
  std::vector<node_t> s_nodes;         // original index of each subgraph node
  std::vector<CliffordTag> correction; // per subgraph node: V and W corrections combined
  double probability = 0.0;
  bool forbidden = false;
};

/// Applies the Z-deletion rule on every red measured node (a -1 outcome
/// pushes sign flips onto the neighborhood) and then reads off the forced X
/// outcomes of the isolated white nodes. The resulting subgraph on s is
/// outcome independent; only the correction tags depend on the outcome.
inline PostMeasurement measure_graph(const ReductionResult& rr, std::uint64_t outcome) {
  AttributedGraph work = rr.reduced;
  std::vector<node_t> measured = rr.regions.s.complement().to_vector();
  if (measured.size() < 64 && (outcome >> measured.size()))
    throw std::invalid_argument("measure_graph: outcome string too long");
  if (measured.size() >= 64 && outcome != 0)
    throw std::invalid_argument("measure_graph: explicit outcomes support at most 63 measured nodes");
  auto outcome_bit = [&](std::size_t k) { return k < 64 ? int((outcome >> k) & 1) : 0; };

  PostMeasurement pm;
  std::size_t red_count = 0;
  for (std::size_t k = 0; k < measured.size(); ++k) {
    node_t j = measured[k];
    if (tag::fill_white(work.tags[j])) continue;  // handled after the Z cascade
    ++red_count;
    Bits nb = work.graph.neighborhood(j);
    work.graph.isolate(j);
    if (outcome_bit(k)) {
      nb.for_each([&](node_t b) { work.tags[b] = tag::flip_sign(work.tags[b]); });
      work.tags[j] = CliffordTag::HZ;
    } else {
      work.tags[j] = CliffordTag::H;
    }
  }
  // The remaining measured nodes are the original whites, isolated by the Z
  // cascade above; the general X rule (local complementations around a helper
  // neighbour) degenerates to reading off the forced outcome.
  Bits whites = rr.white_set();
  for (std::size_t k = 0; k < measured.size(); ++k) {
    node_t j = measured[k];
    if (!whites.test(j)) continue;
    if (work.graph.degree(j) != 0)
      throw std::runtime_error("measure_graph: white node still connected (internal error)");
    int forced = tag::sign_minus(work.tags[j]) ? 1 : 0;
    if (outcome_bit(k) != forced) pm.forbidden = true;
  }

  pm.subgraph_on_s = induced_subgraph(work.graph, rr.regions.s, &pm.s_nodes);
  pm.correction.reserve(pm.s_nodes.size());
  for (node_t v : pm.s_nodes) pm.correction.push_back(work.tags[v]);
  pm.probability = pm.forbidden ? 0.0 : std::ldexp(1.0, -int(red_count));
  return pm;
}

}  // namespace stabloc
