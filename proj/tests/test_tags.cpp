#include <catch2/catch_amalgamated.hpp>

#include "stabloc/attributed_graph.hpp"
#include "stabloc/dense.hpp"
#include "stabloc/random.hpp"

using namespace stabloc;

namespace {

AttributedGraph random_attributed(Rng& rng, std::size_t n) {
  AttributedGraph ag(random_graph(n, rng));
  for (auto& t : ag.tags) t = CliffordTag(rng.bounded(8));
  return ag;
}

dense::Mat2 gen_unitary(CliffordGen u) {
  switch (u) {
    case CliffordGen::Z: return dense::pauli(3);
    case CliffordGen::H: return dense::hadamard();
    case CliffordGen::R: return dense::phase_r();
  }
  return dense::Mat2::Identity();
}

}  // namespace

TEST_CASE("tag algebra basics") {
  REQUIRE(tag::flip_fill(CliffordTag::I) == CliffordTag::H);
  REQUIRE(tag::reshape(CliffordTag::I) == CliffordTag::R);        // red circle -> red diamond
  REQUIRE(tag::reshape(CliffordTag::HRZ) == CliffordTag::H);      // white diamond(-) -> white circle(+)
  REQUIRE(tag::flip_sign(CliffordTag::R) == CliffordTag::RZ);
  REQUIRE(tag::parse("HZ") == CliffordTag::HZ);
  REQUIRE(tag::name(CliffordTag::RZ) == "RZ");
  REQUIRE_THROWS_AS(tag::parse("Q"), std::invalid_argument);
}

TEST_CASE("attribute op on attributed graph") {
  AttributedGraph ag{Graph(2)};
  apply_attribute_op(ag, 0, AttributeOp::flip_fill);
  REQUIRE(ag.tags[0] == CliffordTag::H);
  apply_attribute_op(ag, 0, AttributeOp::reshape);
  REQUIRE(ag.tags[0] == CliffordTag::HR);
  apply_attribute_op(ag, 0, AttributeOp::reshape);
  REQUIRE(ag.tags[0] == CliffordTag::HZ);  // diamond reshape flips shape and sign
  REQUIRE_THROWS_AS(apply_attribute_op(ag, 7, AttributeOp::flip_sign), std::out_of_range);
}

TEST_CASE("tag unitaries multiply as H^h R^r Z^z") {
  using dense::Mat2;
  Mat2 h = dense::hadamard(), r = dense::phase_r(), z = dense::pauli(3);
  REQUIRE((dense::tag_unitary(CliffordTag::HRZ) - h * r * z).norm() < 1e-14);
  REQUIRE((dense::tag_unitary(CliffordTag::RZ) - r * z).norm() < 1e-14);
}

TEST_CASE("conjugate_axis matches dense conjugation") {
  for (int tv = 0; tv < 8; ++tv) {
    CliffordTag t = CliffordTag(tv);
    dense::Mat2 u = dense::tag_unitary(t);
    for (int axis = 0; axis <= 3; ++axis) {
      dense::Mat2 conj = u.adjoint() * dense::pauli(axis) * u;
      int got = tag::conjugate_axis(t, axis);
      // conj must equal +-sigma^got
      double plus = (conj - dense::pauli(got)).norm();
      double minus = (conj + dense::pauli(got)).norm();
      REQUIRE(std::min(plus, minus) < 1e-14);
    }
  }
}

TEST_CASE("conjugation composes through tag products") {
  // conj by tag1 then tag2 equals conj by the operator product tag1*tag2
  for (int t1 = 0; t1 < 8; ++t1)
    for (int t2 = 0; t2 < 8; ++t2) {
      dense::Mat2 u = dense::tag_unitary(CliffordTag(t1)) * dense::tag_unitary(CliffordTag(t2));
      for (int axis = 1; axis <= 3; ++axis) {
        int via_perms = tag::conjugate_axis(CliffordTag(t2), tag::conjugate_axis(CliffordTag(t1), axis));
        dense::Mat2 conj = u.adjoint() * dense::pauli(axis) * u;
        double plus = (conj - dense::pauli(via_perms)).norm();
        double minus = (conj + dense::pauli(via_perms)).norm();
        REQUIRE(std::min(plus, minus) < 1e-14);
      }
    }
}

TEST_CASE("clifford tag rules preserve the represented state") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng.bounded(5);
    AttributedGraph ag = random_attributed(rng, n);
    node_t i = node_t(rng.bounded(n));
    CliffordGen u = CliffordGen(rng.bounded(3));

    dense::State before = dense::tagged_state(ag);
    dense::apply_1q(before, i, gen_unitary(u));

    AttributedGraph after = ag;
    apply_clifford_tag(after, i, u);
    dense::State got = dense::tagged_state(after);

    INFO("trial " << trial << " node " << i << " gen " << int(u));
    REQUIRE(dense::overlap(before, got) == Catch::Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("specific attribute rule examples") {
  // R on a white-circle(+) node applies a local complementation and reshapes
  // the neighborhood (rule A.3)
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  AttributedGraph ag(g);
  ag.tags[0] = CliffordTag::H;
  apply_clifford_tag(ag, 0, CliffordGen::R);
  REQUIRE(ag.tags[0] == CliffordTag::H);
  REQUIRE(ag.tags[1] == CliffordTag::R);
  REQUIRE(ag.tags[2] == CliffordTag::R);
  REQUIRE(ag.graph.has_edge(1, 2));

  // Z on a red node only flips its sign (rule A.7)
  AttributedGraph ag2{Graph(2)};
  apply_clifford_tag(ag2, 0, CliffordGen::Z);
  REQUIRE(ag2.tags[0] == CliffordTag::Z);

  // H twice restores the tags
  AttributedGraph ag3 = ag2;
  apply_clifford_tag(ag3, 1, CliffordGen::H);
  apply_clifford_tag(ag3, 1, CliffordGen::H);
  REQUIRE(ag3.tags == ag2.tags);
}

TEST_CASE("equivalence moves preserve the represented state") {
  Rng rng(77);
  int b1_cases = 0, b2_cases = 0;
  for (int trial = 0; trial < 2000 && (b1_cases < 120 || b2_cases < 120); ++trial) {
    std::size_t n = 2 + rng.bounded(4);
    AttributedGraph ag = random_attributed(rng, n);

    // b1 on any diamond node
    for (node_t i = 0; i < n; ++i) {
      if (!tag::shape_diamond(ag.tags[i])) continue;
      AttributedGraph moved = ag;
      apply_b1(moved, i);
      REQUIRE(dense::overlap(dense::tagged_state(ag), dense::tagged_state(moved)) ==
              Catch::Approx(1.0).margin(1e-10));
      ++b1_cases;
      break;
    }
    // b2 on any circle-circle link
    bool done = false;
    for (auto [i, j] : ag.graph.edges()) {
      if (tag::shape_diamond(ag.tags[i]) || tag::shape_diamond(ag.tags[j]) || done) continue;
      AttributedGraph moved = ag;
      apply_b2(moved, i, j);
      REQUIRE(dense::overlap(dense::tagged_state(ag), dense::tagged_state(moved)) ==
              Catch::Approx(1.0).margin(1e-10));
      ++b2_cases;
      done = true;
    }
  }
  REQUIRE(b1_cases >= 120);
  REQUIRE(b2_cases >= 120);
}
