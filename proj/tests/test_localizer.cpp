#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "stabloc/localizer.hpp"
#include "test_util.hpp"

using namespace stabloc;

TEST_CASE("setup enumeration") {
  Bits s = Bits::of(4, {0, 1});
  REQUIRE(setup_count(2) == 9);
  REQUIRE(setup_count(4) == 81);
  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t i = 0; i < 9; ++i) {
    PauliSetup p = setup_from_index(4, s, i);
    REQUIRE(p.axes[0] == 0);
    REQUIRE(p.axes[1] == 0);
    REQUIRE(p.axes[2] >= 1);
    REQUIRE(p.axes[3] <= 3);
    seen.insert(p.axes);
  }
  REQUIRE(seen.size() == 9);  // duplicate-free and exhaustive
}

TEST_CASE("two qubits joined by a path localize a Bell pair") {
  Graph g = linear_graph(6);
  Bits s = Bits::of(6, {1, 4});
  auto res = lgme_pure(g, s);
  REQUIRE(res.localizable);
  REQUIRE(res.lgme == 1.0);
  // the census includes the single-edge graph
  bool has_edge_graph = false;
  for (auto& o : res.orbits)
    if (o.representative.size() == 2 && o.representative.edge_count() == 1) has_edge_graph = true;
  REQUIRE(has_edge_graph);
}

TEST_CASE("linear subsystems localize floor(n/2)") {
  for (std::size_t n = 3; n <= 6; ++n) {
    std::size_t total = n + 4;
    Graph g = linear_graph(total);
    Bits s(total);
    for (std::size_t k = 0; k < n; ++k) s.set(2 + k);  // bulk patch
    auto res = lgme_pure(g, s);
    REQUIRE(res.localizable);
    REQUIRE(res.lgme == double(n / 2));
    // only linear connected subgraphs appear
    for (auto& o : res.orbits)
      REQUIRE(isomorphic(o.representative, testutil::path_graph(o.representative.size())));
  }
}

TEST_CASE("square plaquette censuses") {
  Graph g = square_graph(4, 4);
  auto pick = [&](std::size_t r, std::size_t c) {
    Bits s(16);
    s.set(r * 4 + c);
    s.set(r * 4 + c + 1);
    s.set((r + 1) * 4 + c);
    s.set((r + 1) * 4 + c + 1);
    return s;
  };

  SECTION("corner plaquette: a single orbit of value 2") {
    auto res = lgme_pure(g, pick(0, 0));
    // this reduction order reaches 12 labeled subgraphs at every grid size
    REQUIRE(res.connected_labeled == 12);
    REQUIRE(res.orbits.size() == 1);
    REQUIRE(res.lgme == 2.0);
  }
  SECTION("boundary plaquette: 38 subgraphs, 2 orbits, values 1 and 2") {
    auto res = lgme_pure(g, pick(0, 1));
    REQUIRE(res.connected_labeled == 38);
    REQUIRE(res.orbits.size() == 2);
    std::set<double> values;
    for (auto& o : res.orbits) values.insert(o.value);
    REQUIRE(values == std::set<double>{1.0, 2.0});
    REQUIRE(res.lgme == 2.0);
  }
  SECTION("bulk plaquette: 38 subgraphs, 2 orbits") {
    // the interior plaquette of the 4x4 grid has the full bulk neighborhood
    Bits s(16);
    s.set(1 * 4 + 1);
    s.set(1 * 4 + 2);
    s.set(2 * 4 + 1);
    s.set(2 * 4 + 2);
    auto res = lgme_pure(g, s);
    REQUIRE(res.connected_labeled == 38);
    REQUIRE(res.orbits.size() == 2);
    REQUIRE(res.lgme == 2.0);
  }
}

TEST_CASE("ladder censuses") {
  SECTION("two boundary rungs: 3 subgraphs, one orbit, value 2") {
    Graph g = ladder_graph(5);
    Bits s = Bits::of(10, {0, 1, 5, 6});
    auto res = lgme_pure(g, s);
    REQUIRE(res.connected_labeled == 3);
    REQUIRE(res.orbits.size() == 1);
    REQUIRE(res.lgme == 2.0);
  }
  SECTION("two bulk rungs: 7 subgraphs, two orbits, value 2") {
    Graph g = ladder_graph(6);
    Bits s = Bits::of(12, {2, 3, 8, 9});
    auto res = lgme_pure(g, s);
    REQUIRE(res.connected_labeled == 7);
    REQUIRE(res.orbits.size() == 2);
    REQUIRE(res.lgme == 2.0);
  }
  SECTION("GGM of every orbit is one half") {
    Graph g = ladder_graph(5);
    Bits s = Bits::of(10, {0, 1, 5, 6});
    auto res = lgme_pure(g, s, PureMeasure::ggm);
    for (auto& o : res.orbits) REQUIRE(o.value == Catch::Approx(0.5).margin(1e-10));
    REQUIRE(res.lgme == Catch::Approx(0.5).margin(1e-10));
  }
}

TEST_CASE("alpha_c systems satisfy the selection criteria") {
  std::vector<AlphaCSystem> systems;
  systems.push_back(make_alpha_c({LatticeKind::linear, {12}}, Placement::bulk));
  systems.push_back(make_alpha_c({LatticeKind::linear, {12}}, Placement::boundary));
  systems.push_back(make_alpha_c({LatticeKind::ladder, {6}}, Placement::bulk));
  systems.push_back(make_alpha_c({LatticeKind::ladder, {6}}, Placement::boundary));
  systems.push_back(make_alpha_c({LatticeKind::square, {5, 5}}, Placement::bulk));
  systems.push_back(make_alpha_c({LatticeKind::square, {5, 5}}, Placement::boundary));
  systems.push_back(make_alpha_c({LatticeKind::square, {5, 5}}, Placement::corner));
  systems.push_back(make_alpha_c_toric_loop(3));
  systems.push_back(make_alpha_c_toric_two_loops(4, 2));
  for (const auto& sys : systems) {
    INFO(sys.description);
    auto rr = reduce_graph(rotate_setup_to_z(sys.graph, sys.setup), sys.s);
    REQUIRE(classify_outcomes(rr).gamma);
    auto pm = measure_graph(rr, 0);
    REQUIRE(is_connected(pm.subgraph_on_s));
  }
}

TEST_CASE("toric loop reduces to a star and localizes GME") {
  for (std::size_t np : {2ul, 3ul, 4ul}) {
    AlphaCSystem sys = make_alpha_c_toric_loop(np);
    auto rr = reduce_graph(rotate_setup_to_z(sys.graph, sys.setup), sys.s);
    auto pm = measure_graph(rr, 0);
    REQUIRE(isomorphic(pm.subgraph_on_s, testutil::star_graph(np)));
    GDState pure = noisy_gd_for(sys, {ChannelKind::BF, 0.0, 0.0});
    REQUIRE(gme_present(pure));
  }
}

TEST_CASE("pure limit of the noisy pipeline matches the pure sweep value") {
  AlphaCSystem sys = make_alpha_c({LatticeKind::square, {4, 4}}, Placement::corner);
  NoisyBound nb = noisy_lower_bound(sys, {ChannelKind::DP, 0.0, 0.0}, NoisyQuantifier::gme_flag);
  REQUIRE(nb.value == 1.0);
  REQUIRE(nb.gd.lambdas[0] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("toric bit-flip critical strength matches the closed form") {
  AlphaCSystem sys = make_alpha_c_toric_loop(3);
  for (double eps : {0.1, 0.3, 0.5, 0.7, 1.0}) {
    double expected = (1 + eps - std::sqrt(1 + eps * eps)) / eps;
    REQUIRE(critical_noise(sys, ChannelKind::BF, eps) == Catch::Approx(expected).margin(1e-5));
  }
  // identical across lattice sizes
  double q3 = critical_noise(make_alpha_c_toric_loop(3), ChannelKind::BF, 0.6);
  double q4 = critical_noise(make_alpha_c_toric_loop(4), ChannelKind::BF, 0.6);
  double q5 = critical_noise(make_alpha_c_toric_loop(5), ChannelKind::BF, 0.6);
  REQUIRE(q3 == Catch::Approx(q4).margin(1e-7));
  REQUIRE(q3 == Catch::Approx(q5).margin(1e-7));
  // the Markovian limit pushes the root to the sentinel
  REQUIRE(critical_noise(sys, ChannelKind::BF, 0.0) == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("critical noise on the square graph orders by placement") {
  LatticeSpec spec{LatticeKind::square, {5, 5}};
  double eps = 0.5;
  double bulk = critical_noise(make_alpha_c(spec, Placement::bulk), ChannelKind::BF, eps);
  double boundary = critical_noise(make_alpha_c(spec, Placement::boundary), ChannelKind::BF, eps);
  double corner = critical_noise(make_alpha_c(spec, Placement::corner), ChannelKind::BF, eps);
  REQUIRE(bulk > 0.0);
  REQUIRE(bulk <= boundary + 1e-9);
  REQUIRE(boundary <= corner + 1e-9);

  // phase damping commutes with the measurements: placement independent
  double pd_bulk = critical_noise(make_alpha_c(spec, Placement::bulk), ChannelKind::PD, eps);
  double pd_corner = critical_noise(make_alpha_c(spec, Placement::corner), ChannelKind::PD, eps);
  REQUIRE(pd_bulk == Catch::Approx(pd_corner).margin(1e-6));
}

TEST_CASE("qc curves decrease with the non-Markovianity parameter") {
  AlphaCSystem sys = make_alpha_c({LatticeKind::linear, {10}}, Placement::bulk);
  QcCurve curve = qc_curve(sys, ChannelKind::BPF, {0.0, 0.25, 0.5, 0.75, 1.0});
  REQUIRE(curve.fit.size() == 3);  // quadratic
  for (std::size_t i = 1; i < curve.qc.size(); ++i) REQUIRE(curve.qc[i] <= curve.qc[i - 1] + 1e-9);
}

TEST_CASE("polyfit recovers exact polynomials") {
  std::vector<double> x{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> y;
  for (double v : x) y.push_back(0.3 - 0.2 * v + 0.05 * v * v);
  auto c = polyfit(x, y, 2);
  REQUIRE(c[0] == Catch::Approx(0.3).margin(1e-12));
  REQUIRE(c[1] == Catch::Approx(-0.2).margin(1e-12));
  REQUIRE(c[2] == Catch::Approx(0.05).margin(1e-12));
}

TEST_CASE("two-loop negativity behaves like a distance-monotone bound") {
  // positive at q = 0, decreasing with loop distance at fixed q
  std::vector<double> qs{0.0, 0.2};
  auto d1 = two_loop_negativity(4, 1, ChannelKind::BF, 0.5, qs);
  auto d2 = two_loop_negativity(4, 2, ChannelKind::BF, 0.5, qs);
  REQUIRE(d1[0].second > 0.0);
  REQUIRE(d2[0].second > 0.0);
  for (std::size_t k = 0; k < qs.size(); ++k) REQUIRE(d2[k].second <= d1[k].second + 1e-9);
}

TEST_CASE("two-loop negativity matches the dense oracle on the smallest code") {
  AlphaCSystem sys = make_alpha_c_toric_two_loops(2, 1);
  ChannelSpec noise{ChannelKind::BPF, 0.15, 0.4};
  NoisyBound nb = noisy_lower_bound(sys, noise, NoisyQuantifier::negativity);

  // dense route: build the tagged state, apply the physical channels, project
  ToricGraphState t = toric_graph_state(2, {0, 1});
  dense::Density rho = dense::density_from_state(dense::tagged_state(t.state));
  std::vector<std::array<double, 4>> probs(8, channel_probs(noise));
  rho = dense::apply_channels(rho, probs);
  // physical-frame measurement axes: the graph-frame axis a corresponds to
  // measuring T sigma^a T^dag on the physical state
  PauliSetup physical(8);
  for (node_t q = 0; q < 8; ++q) {
    if (sys.s.test(q)) continue;
    int a = sys.setup.axes[q];
    dense::Mat2 u = dense::tag_unitary(t.state.tags[q]);
    dense::Mat2 conj = u * dense::pauli(a) * u.adjoint();
    for (int b = 1; b <= 3; ++b)
      if ((conj - dense::pauli(b)).norm() < 1e-12 || (conj + dense::pauli(b)).norm() < 1e-12)
        physical.axes[q] = std::uint8_t(b);
    REQUIRE(physical.axes[q] >= 1);
  }
  auto [p, rho_s] = dense::project_and_condition(rho, physical, 0);
  REQUIRE(p > 0.0);
  Bits cut_local(4);
  std::size_t idx = 0;
  sys.s.for_each([&](node_t v) {
    if (sys.cut_a->test(v)) cut_local.set(idx);
    ++idx;
  });
  double dense_val = negativity(rho_s, cut_local);
  REQUIRE(nb.value == Catch::Approx(dense_val).margin(1e-9));
}

TEST_CASE("large-subsystem schmidt sweep agrees with the census path") {
  // n = 6 fits both paths; values must agree
  Graph g = linear_graph(10);
  Bits s(10);
  for (std::size_t k = 0; k < 6; ++k) s.set(2 + k);
  REQUIRE(lgme_schmidt_large(g, s) == lgme_pure(g, s).lgme);

  // n = 9 only fits the large path
  Graph g9 = linear_graph(13);
  Bits s9(13);
  for (std::size_t k = 0; k < 9; ++k) s9.set(2 + k);
  REQUIRE(lgme_schmidt_large(g9, s9) == 4.0);
}

TEST_CASE("critical strength is invariant under lattice growth") {
  for (auto kind : {ChannelKind::BF, ChannelKind::PD}) {
    double eps = 0.5;
    double lin_small = critical_noise(make_alpha_c({LatticeKind::linear, {10}}, Placement::bulk), kind, eps);
    double lin_large = critical_noise(make_alpha_c({LatticeKind::linear, {14}}, Placement::bulk), kind, eps);
    REQUIRE(lin_small == Catch::Approx(lin_large).margin(2e-6));
    double lad_small = critical_noise(make_alpha_c({LatticeKind::ladder, {6}}, Placement::bulk), kind, eps);
    double lad_large = critical_noise(make_alpha_c({LatticeKind::ladder, {8}}, Placement::bulk), kind, eps);
    REQUIRE(lad_small == Catch::Approx(lad_large).margin(2e-6));
    double sq_small = critical_noise(make_alpha_c({LatticeKind::square, {5, 5}}, Placement::bulk), kind, eps);
    double sq_large = critical_noise(make_alpha_c({LatticeKind::square, {6, 6}}, Placement::bulk), kind, eps);
    REQUIRE(sq_small == Catch::Approx(sq_large).margin(2e-6));
  }
}

TEST_CASE("toric bit-flip noise leaves the loop's measured neighborhood silent") {
  for (std::size_t np : {3ul, 5ul}) {
    AlphaCSystem sys = make_alpha_c_toric_loop(np);
    auto rr = reduce_graph(rotate_setup_to_z(sys.graph, sys.setup), sys.s);
    auto part = partition_subclasses(rr, sys.setup, per_node_channels(sys, {ChannelKind::BF, 0.4, 0.6}));
    REQUIRE(part.s_dprime.none());
    // phase damping on the physical qubits does excite the neighborhood
    auto part_pd = partition_subclasses(rr, sys.setup, per_node_channels(sys, {ChannelKind::PD, 0.4, 0.6}));
    REQUIRE(part_pd.s_dprime.any());
  }
}

TEST_CASE("sweeps are schedule independent") {
  Graph g = square_graph(4, 4);
  Bits s = Bits::of(16, {1, 2, 5, 6});
  SweepOptions one;
  one.threads = 1;
  SweepOptions many;
  many.threads = 4;
  auto a = lgme_pure(g, s, PureMeasure::schmidt, one);
  auto b = lgme_pure(g, s, PureMeasure::schmidt, many);
  REQUIRE(a.connected_labeled == b.connected_labeled);
  REQUIRE(a.iso_classes == b.iso_classes);
  REQUIRE(a.orbits.size() == b.orbits.size());
  REQUIRE(a.lgme == b.lgme);
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    REQUIRE(a.orbits[i].canonical == b.orbits[i].canonical);
    REQUIRE(a.orbits[i].labeled_count == b.orbits[i].labeled_count);
    REQUIRE(a.orbits[i].example_setup == b.orbits[i].example_setup);
  }
}
