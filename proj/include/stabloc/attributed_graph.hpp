#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stabloc/clifford_tag.hpp"
#include "stabloc/graph.hpp"

namespace stabloc {

/// Graph with one Clifford attribute per node. Represents the tagged state
/// (tensor of node tags) |G>; the global phase is never tracked.
struct AttributedGraph {
  Graph graph;
  std::vector<CliffordTag> tags;

  AttributedGraph() = default;
  explicit AttributedGraph(Graph g) : graph(std::move(g)), tags(graph.size(), CliffordTag::I) {}
  AttributedGraph(Graph g, std::vector<CliffordTag> t) : graph(std::move(g)), tags(std::move(t)) {
    if (tags.size() != graph.size()) throw std::invalid_argument("attributed graph: tag count != node count");
  }

  std::size_t size() const { return graph.size(); }
};

enum class AttributeOp { flip_shape, flip_fill, flip_sign, reshape };

/// Elementary graph operations, with the op accounting used by the
/// complexity bound: every attribute flip or reshape costs 1, every edge
/// toggle inside a local complementation costs 1.
namespace detail {

inline void count(std::size_t* ops, std::size_t k) {
  if (ops) *ops += k;
}

inline void flip_fill(AttributedGraph& ag, node_t i, std::size_t* ops) {
  ag.tags[i] = tag::flip_fill(ag.tags[i]);
  count(ops, 1);
}
inline void flip_shape(AttributedGraph& ag, node_t i, std::size_t* ops) {
  ag.tags[i] = tag::flip_shape(ag.tags[i]);
  count(ops, 1);
}
inline void flip_sign(AttributedGraph& ag, node_t i, std::size_t* ops) {
  ag.tags[i] = tag::flip_sign(ag.tags[i]);
  count(ops, 1);
}
inline void reshape(AttributedGraph& ag, node_t i, std::size_t* ops) {
  ag.tags[i] = tag::reshape(ag.tags[i]);
  count(ops, 1);
}
inline void local_complement(AttributedGraph& ag, node_t i, std::size_t* ops) {
  count(ops, ag.graph.complement_neighborhood(i));
}

inline void flip_sign_all(AttributedGraph& ag, const Bits& nodes, std::size_t* ops) {
  nodes.for_each([&](node_t j) { flip_sign(ag, j, ops); });
}
inline void reshape_all(AttributedGraph& ag, const Bits& nodes, std::size_t* ops) {
  nodes.for_each([&](node_t j) { reshape(ag, j, ops); });
}

}  // namespace detail

inline void apply_attribute_op(AttributedGraph& ag, node_t i, AttributeOp op, std::size_t* ops = nullptr) {
  if (i >= ag.size()) throw std::out_of_range("apply_attribute_op: node out of range");
  switch (op) {
    case AttributeOp::flip_shape: detail::flip_shape(ag, i, ops); break;
    case AttributeOp::flip_fill: detail::flip_fill(ag, i, ops); break;
    case AttributeOp::flip_sign: detail::flip_sign(ag, i, ops); break;
    case AttributeOp::reshape: detail::reshape(ag, i, ops); break;
  }
}

enum class CliffordGen : std::uint8_t { Z, H, R };

/// Applies a single-qubit Clifford generator to node i of the tagged state,
/// rewriting tags (and, for R on white nodes, the connectivity) so that the
/// represented state is unchanged up to global phase. Dispatch follows the
/// nine attribute rules of the measurement calculus.
inline void apply_clifford_tag(AttributedGraph& ag, node_t i, CliffordGen u, std::size_t* ops = nullptr) {
  if (i >= ag.size()) throw std::out_of_range("apply_clifford_tag: node out of range");
  CliffordTag t = ag.tags[i];
  switch (u) {
    case CliffordGen::H:
      // A.1: H on any node flips the fill.
      detail::flip_fill(ag, i, ops);
      return;
    case CliffordGen::Z:
      if (!tag::fill_white(t)) {
        detail::flip_sign(ag, i, ops);  // A.7
      } else if (!tag::shape_diamond(t)) {
        detail::flip_sign_all(ag, ag.graph.neighborhood(i), ops);  // A.8
      } else {
        detail::flip_sign(ag, i, ops);  // A.9
        detail::flip_sign_all(ag, ag.graph.neighborhood(i), ops);
      }
      return;
    case CliffordGen::R:
      if (!tag::fill_white(t)) {
        detail::reshape(ag, i, ops);  // A.2
        return;
      }
      if (tag::shape_diamond(t)) {
        // A.5 / A.6: pre-flip the node to a red circle, then complement.
        detail::flip_fill(ag, i, ops);
        detail::flip_shape(ag, i, ops);
      }
      {
        bool was_minus = tag::sign_minus(t);
        bool was_diamond = tag::shape_diamond(t);
        detail::local_complement(ag, i, ops);
        Bits nb = ag.graph.neighborhood(i);
        detail::reshape_all(ag, nb, ops);
        // A.4 (white circle -) and A.5 (white diamond +) add neighborhood
        // sign flips; A.3 and A.6 do not.
        if (was_minus != was_diamond) detail::flip_sign_all(ag, nb, ops);
      }
      return;
  }
}

/// Equivalence move on a diamond node: flip fill, complement locally, reshape
/// the neighborhood, flip the node sign, and push a minus sign out onto the
/// neighborhood. Leaves the represented state invariant.
inline void apply_b1(AttributedGraph& ag, node_t i, std::size_t* ops = nullptr) {
  if (!tag::shape_diamond(ag.tags[i])) throw std::invalid_argument("b1: node is not a diamond");
  detail::flip_fill(ag, i, ops);
  detail::local_complement(ag, i, ops);
  Bits nb = ag.graph.neighborhood(i);
  detail::reshape_all(ag, nb, ops);
  detail::flip_sign(ag, i, ops);
  if (tag::sign_minus(ag.tags[i])) detail::flip_sign_all(ag, nb, ops);
}

/// Equivalence move on a link between two circle nodes: flip both fills,
/// complement along the edge, flip signs of common neighbours, then absorb
/// any minus sign on an endpoint into its neighborhood.
inline void apply_b2(AttributedGraph& ag, node_t i, node_t j, std::size_t* ops = nullptr) {
  if (tag::shape_diamond(ag.tags[i]) || tag::shape_diamond(ag.tags[j]))
    throw std::invalid_argument("b2: endpoint is not a circle");
  if (!ag.graph.has_edge(i, j)) throw std::invalid_argument("b2: edge absent");
  detail::flip_fill(ag, i, ops);
  detail::flip_fill(ag, j, ops);
  detail::local_complement(ag, i, ops);
  detail::local_complement(ag, j, ops);
  detail::local_complement(ag, i, ops);
  Bits common = ag.graph.neighborhood(i) & ag.graph.neighborhood(j);
  detail::flip_sign_all(ag, common, ops);
  // A minus on an endpoint converts to sign flips across its neighborhood.
  // Both conditions are read before either is processed: the flip one
  // endpoint deposits on the other is a correction that must stay.
  bool minus_i = tag::sign_minus(ag.tags[i]);
  bool minus_j = tag::sign_minus(ag.tags[j]);
  if (minus_i) {
    detail::flip_sign(ag, i, ops);
    detail::flip_sign_all(ag, ag.graph.neighborhood(i), ops);
  }
  if (minus_j) {
    detail::flip_sign(ag, j, ops);
    detail::flip_sign_all(ag, ag.graph.neighborhood(j), ops);
  }
}

}  // namespace stabloc
