#include <catch2/catch_amalgamated.hpp>

#include "stabloc/random.hpp"
#include "stabloc/subclasses.hpp"
#include "test_util.hpp"

using namespace stabloc;
using testutil::gd_density;

namespace {

Graph forbid_graph() {
  return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

GDState random_gd(Rng& rng, std::size_t n) {
  GDState gd(random_connected_graph(n, rng), std::vector<double>(std::size_t(1) << n, 0.0));
  double sum = 0;
  for (auto& v : gd.lambdas) {
    v = rng.uniform();
    sum += v;
  }
  for (auto& v : gd.lambdas) v /= sum;
  return gd;
}

}  // namespace

TEST_CASE("xor composition") {
  Graph edge = testutil::path_graph(2);
  GDState identity(edge, {1.0, 0.0, 0.0, 0.0});
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    GDState a = random_gd(rng, 2), b = random_gd(rng, 2);
    b.basis_graph = a.basis_graph;
    GDState ab = xor_compose(a, b), ba = xor_compose(b, a);
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(ab.lambdas[i] == Catch::Approx(ba.lambdas[i]).margin(1e-14));
    GDState ai = xor_compose(a, GDState(a.basis_graph, {1.0, 0.0, 0.0, 0.0}));
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(ai.lambdas[i] == Catch::Approx(a.lambdas[i]).margin(1e-14));
    // direct convolution oracle
    GDState ab2(a.basis_graph, {0, 0, 0, 0});
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t y = 0; y < 4; ++y) ab2.lambdas[x ^ y] += a.lambdas[x] * b.lambdas[y];
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(ab.lambdas[i] == Catch::Approx(ab2.lambdas[i]).margin(1e-13));
  }
  (void)identity;
}

TEST_CASE("noise on the subsystem as graph-diagonal mixing") {
  // phase damping on one qubit flips its psi bit with weight q/2
  Graph edge = testutil::path_graph(2);
  double q = 0.37;
  std::vector<PauliProbs> probs{channel_probs({ChannelKind::PD, q, 0.0}), {1, 0, 0, 0}};
  GDState gd = noise_on_s_gd(edge, probs);
  REQUIRE(gd.lambdas[0] == Catch::Approx(1 - q / 2).epsilon(1e-14));
  REQUIRE(gd.lambdas[1] == Catch::Approx(q / 2).epsilon(1e-14));
  REQUIRE(gd.lambdas[2] == 0.0);
  REQUIRE(gd.lambdas[3] == 0.0);

  // q = 0 everywhere gives the delta distribution
  std::vector<ChannelSpec> zero(2, {ChannelKind::DP, 0.0, 0.0});
  GDState none = noise_on_s_gd(edge, zero, {CliffordTag::I, CliffordTag::I});
  REQUIRE(none.lambdas[0] == 1.0);

  // BPF on both qubits of a connected pair: the worked-example row vector
  for (double qq : {0.1, 0.3, 0.7}) {
    std::vector<ChannelSpec> bpf(2, {ChannelKind::BPF, qq, 0.0});
    GDState row = noise_on_s_gd(edge, bpf, {CliffordTag::I, CliffordTag::I});
    REQUIRE(row.lambdas[0] == Catch::Approx(1 - qq + qq * qq / 2).margin(1e-12));
    REQUIRE(row.lambdas[1] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(row.lambdas[2] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(row.lambdas[3] == Catch::Approx(qq - qq * qq / 2).margin(1e-12));
  }
}

TEST_CASE("mixing probabilities from the subclass partition") {
  Graph g = forbid_graph();
  Bits s = Bits::of(4, {0, 1});
  PauliSetup setup = PauliSetup::all_z_except(4, s);
  auto rr = reduce_graph(rotate_setup_to_z(g, setup), s);

  for (double q : {0.1, 0.3, 0.7}) {
    std::vector<ChannelSpec> noise(4, {ChannelKind::BPF, q, 0.0});
    auto part = partition_subclasses(rr, setup, noise);
    REQUIRE(part.s_dprime == Bits::of(4, {2, 3}));
    REQUIRE(part.multis.size() == 1);
    REQUIRE(part.multis[0].members.size() == 2);
    auto lam = mixing_lambda(part);
    // the worked-example row [1-q+q^2/2, 0, 0, q-q^2/2]
    REQUIRE(lam[0] == Catch::Approx(1 - q + q * q / 2).margin(1e-12));
    REQUIRE(lam[1] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(lam[2] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(lam[3] == Catch::Approx(q - q * q / 2).margin(1e-12));
    REQUIRE(mixing_probability(part, 0) == Catch::Approx(lam[0]));
  }

  // phase damping commutes with the Z measurements: S''_1 is empty
  std::vector<ChannelSpec> pd(4, {ChannelKind::PD, 0.5, 0.3});
  auto part_pd = partition_subclasses(rr, setup, pd);
  REQUIRE(part_pd.s_dprime.none());
  auto lam_pd = mixing_lambda(part_pd);
  REQUIRE(lam_pd[0] == Catch::Approx(1.0));

  // q_n = 0 gives the noiseless delta
  std::vector<ChannelSpec> off(4, {ChannelKind::BF, 0.0, 0.0});
  auto lam0 = mixing_lambda(partition_subclasses(rr, setup, off));
  REQUIRE(lam0[0] == Catch::Approx(1.0));
}

TEST_CASE("single subclass closed form") {
  // one subclass of size c attached to a single-node subsystem
  for (int c : {1, 2, 5}) {
    double q_n = 0.21;
    SubclassPartition part;
    part.n_s = 1;
    part.singles.resize(1);
    part.singles[0].s_neighborhood = 1;
    for (int m = 0; m < c; ++m) {
      part.singles[0].members.push_back(node_t(m));
      part.singles[0].flip_parity_product *= 1.0 - 2.0 * q_n;
    }
    auto lam = mixing_lambda(part);
    REQUIRE(lam[1] == Catch::Approx(0.5 * (1 - std::pow(1 - 2 * q_n, c))).margin(1e-14));
    REQUIRE(lam[0] + lam[1] == Catch::Approx(1.0).margin(1e-14));
  }
}

TEST_CASE("worked-example composition golden vectors") {
  Graph g = forbid_graph();
  Bits s = Bits::of(4, {0, 1});
  PauliSetup setup = PauliSetup::all_z_except(4, s);
  auto rr = reduce_graph(rotate_setup_to_z(g, setup), s);
  for (double q : {0.1, 0.3, 0.7}) {
    std::vector<ChannelSpec> noise(4, {ChannelKind::BPF, q, 0.0});
    GDState gd = noisy_gd_state(rr, setup, noise);
    double a = 1 - q + q * q / 2, b = q - q * q / 2;
    REQUIRE(gd.lambdas[0] == Catch::Approx(a * a + b * b).margin(1e-12));
    REQUIRE(gd.lambdas[1] == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(gd.lambdas[2] == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(gd.lambdas[3] == Catch::Approx(2 * a * b).margin(1e-12));
    gd.check_normalized();
  }
}

TEST_CASE("ghz dephasing closed form") {
  GDState pure = ghz_pd_closed_form(4, 0.0, 0.0);
  REQUIRE(pure.coherence.value() == Catch::Approx(0.5));
  REQUIRE(pure.lambdas[0] == 0.5);
  REQUIRE(pure.lambdas[1] == 0.5);

  REQUIRE(ghz_pd_closed_form(4, 1.0, 0.0).coherence.value() == Catch::Approx(0.0).margin(1e-15));

  GDState g3 = ghz_pd_closed_form(3, 0.5, 1.0);
  // f = 0.875, coherence = 0.125^3 / 2
  REQUIRE(g3.coherence.value() == Catch::Approx(std::pow(0.125, 3) / 2).epsilon(1e-12));

  REQUIRE_THROWS_AS(ghz_pd_closed_form(1, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("gd local complementation matches the dense picture") {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng.bounded(4);
    GDState gd = random_gd(rng, n);
    node_t i = node_t(rng.bounded(n));
    GDState moved = gd_local_complement(gd, i);
    REQUIRE(moved.basis_graph == local_complement(gd.basis_graph, i));

    // dense: conjugating by the local Clifford of the complementation maps
    // one density onto the other
    dense::Density rho = gd_density(gd);
    dense::Mat2 sx = dense::pauli(1), sz = dense::pauli(3);
    dense::Mat2 exp_x = (dense::Mat2::Identity() - dense::cx(0, 1) * sx) / std::sqrt(2.0);
    dense::Mat2 exp_z = (dense::Mat2::Identity() + dense::cx(0, 1) * sz) / std::sqrt(2.0);
    dense::apply_1q(rho, i, exp_x);
    gd.basis_graph.neighborhood(i).for_each([&](node_t j) { dense::apply_1q(rho, j, exp_z); });
    REQUIRE((rho - gd_density(moved)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("gd permutation relabels nodes") {
  Rng rng(19);
  GDState gd = random_gd(rng, 3);
  std::vector<node_t> perm{2, 0, 1};
  GDState moved = gd_permute(gd, perm);
  for (std::size_t psi = 0; psi < 8; ++psi) {
    std::size_t target = ((psi & 1) << 2) | ((psi >> 1 & 1) << 0) | ((psi >> 2 & 1) << 1);
    REQUIRE(moved.lambdas[target] == gd.lambdas[psi]);
  }
  REQUIRE(moved.basis_graph.has_edge(2, 0) == gd.basis_graph.has_edge(0, 1));
}

TEST_CASE("gd negativity equals the dense partial transpose") {
  Rng rng(23);
  for (int t = 0; t < 25; ++t) {
    std::size_t n = 2 + rng.bounded(5);
    GDState gd = random_gd(rng, n);
    std::uint64_t amask = 1 + rng.bounded((1ull << n) - 2);
    Bits a(n);
    for (std::size_t b = 0; b < n; ++b)
      if ((amask >> b) & 1) a.set(b);
    double fast = gd_negativity(gd, a);
    dense::Density pt = dense::partial_transpose(gd_density(gd), a);
    double slow = (dense::trace_norm_hermitian(pt) - 1.0) / 2.0;
    REQUIRE(fast == Catch::Approx(slow).margin(1e-10));
  }
}

TEST_CASE("noisy gd pipeline matches the dense oracle") {
  Rng rng(1001);
  const ChannelKind kinds[4] = {ChannelKind::BF, ChannelKind::BPF, ChannelKind::PD, ChannelKind::DP};
  int done = 0;
  for (int trial = 0; trial < 200 && done < 40; ++trial) {
    std::size_t n = 3 + rng.bounded(3);
    Graph g = random_connected_graph(n, rng);
    std::size_t s_size = 2;
    Bits s(n);
    while (s.count() < s_size) s.set(rng.bounded(n));
    PauliSetup setup(n);
    for (node_t i = 0; i < n; ++i)
      if (!s.test(i)) setup.axes[i] = std::uint8_t(1 + rng.bounded(3));
    auto rr = reduce_graph(rotate_setup_to_z(g, setup), s);
    auto oc = classify_outcomes(rr);
    if (!oc.gamma) continue;
    ++done;

    std::vector<ChannelSpec> noise;
    std::vector<std::array<double, 4>> dense_probs;
    for (std::size_t i = 0; i < n; ++i) {
      ChannelSpec c{kinds[rng.bounded(4)], rng.uniform() * 0.9, rng.uniform()};
      if (c.kind == ChannelKind::DP) c.q = std::min(c.q, 0.9 * channel_validity_limit(c.kind, c.eps));
      noise.push_back(c);
      dense_probs.push_back(channel_probs(c));
    }

    GDState gd = noisy_gd_state(rr, setup, noise);
    gd.check_normalized(1e-9);

    dense::Density rho = dense::density_from_state(dense::graph_state(g));
    rho = dense::apply_channels(rho, dense_probs);
    std::size_t m = n - s_size;
    for (std::uint64_t k = 0; k < (1ull << m); ++k) {
      auto [p, rho_s] = dense::project_and_condition(rho, setup, k);
      REQUIRE(p == Catch::Approx(std::ldexp(1.0, -int(m))).margin(1e-12));
      auto pm = measure_graph(rr, k);
      for (std::size_t v = 0; v < pm.s_nodes.size(); ++v)
        dense::apply_1q(rho_s, node_t(v), dense::Mat2(dense::tag_unitary(pm.correction[v]).adjoint()));
      dense::Density in_basis = dense::graph_basis_matrix(rho_s, pm.subgraph_on_s);
      REQUIRE(dense::max_offdiagonal(in_basis) < 1e-10);
      for (std::size_t psi = 0; psi < gd.lambdas.size(); ++psi)
        REQUIRE(in_basis(Eigen::Index(psi), Eigen::Index(psi)).real() ==
                Catch::Approx(gd.lambdas[psi]).margin(1e-10));
    }
  }
  REQUIRE(done >= 40);
}

TEST_CASE("outcome relabeling acts as a Z-string bit permutation") {
  // For a gamma-class setup, conjugating the conditioned state by the
  // reduction tags alone leaves lambda vectors that differ between outcomes
  // by the XOR mask accumulated from -1 outcomes next to the subsystem.
  Rng rng(4242);
  Graph g = random_connected_graph(5, rng);
  Bits s = Bits::of(5, {0, 1});
  PauliSetup setup = PauliSetup::all_z_except(5, s);
  auto rr = reduce_graph(rotate_setup_to_z(g, setup), s);
  std::vector<ChannelSpec> noise(5, {ChannelKind::DP, 0.2, 0.5});
  std::vector<std::array<double, 4>> dense_probs(5, channel_probs(noise[0]));

  dense::Density rho = dense::apply_channels(dense::density_from_state(dense::graph_state(g)), dense_probs);
  auto pm0 = measure_graph(rr, 0);
  std::vector<node_t> measured = rr.regions.s.complement().to_vector();

  auto lambda_for = [&](std::uint64_t k) {
    auto [p, rho_s] = dense::project_and_condition(rho, setup, k);
    (void)p;
    for (std::size_t v = 0; v < pm0.s_nodes.size(); ++v)
      dense::apply_1q(rho_s, node_t(v), dense::Mat2(dense::tag_unitary(rr.reduced.tags[pm0.s_nodes[v]]).adjoint()));
    return dense::graph_basis_fidelities(rho_s, pm0.subgraph_on_s);
  };

  auto base = lambda_for(0);
  for (std::uint64_t k = 0; k < 8; ++k) {
    std::uint64_t delta = 0;
    for (std::size_t pos = 0; pos < measured.size(); ++pos) {
      if (!((k >> pos) & 1)) continue;
      node_t j = measured[pos];
      if (!rr.regions.s1.test(j)) continue;
      std::uint64_t mask = 0;
      (rr.reduced.graph.neighborhood(j) & rr.regions.s).for_each([&](node_t v) {
        for (std::size_t idx = 0; idx < pm0.s_nodes.size(); ++idx)
          if (pm0.s_nodes[idx] == v) mask ^= std::uint64_t(1) << idx;
      });
      delta ^= mask;
    }
    auto lam = lambda_for(k);
    for (std::size_t psi = 0; psi < lam.size(); ++psi)
      REQUIRE(lam[psi] == Catch::Approx(base[psi ^ delta]).margin(1e-10));
  }
}

TEST_CASE("dense channel evolution reproduces the GHZ dephasing closed form") {
  // validates the oracle itself against an analytic expression
  for (std::size_t n : {3ul, 4ul}) {
    for (double q : {0.2, 0.6}) {
      double eps = 0.8;
      dense::State ghz = dense::State::Zero(Eigen::Index(1) << n);
      ghz[0] = 1.0 / std::sqrt(2.0);
      ghz[(Eigen::Index(1) << n) - 1] = 1.0 / std::sqrt(2.0);
      dense::Density rho = dense::density_from_state(ghz);
      rho = dense::apply_channels(rho, std::vector<std::array<double, 4>>(n, channel_probs({ChannelKind::PD, q, eps})));
      double f = q * (1 + eps * (1 - q / 2));
      REQUIRE(rho(0, (Eigen::Index(1) << n) - 1).real() ==
              Catch::Approx(std::pow(1 - f, double(n)) / 2).margin(1e-12));
      REQUIRE(rho(0, 0).real() == Catch::Approx(0.5).margin(1e-12));
      GDState closed = ghz_pd_closed_form(n, q, eps);
      REQUIRE(closed.coherence.value() ==
              Catch::Approx(rho(0, (Eigen::Index(1) << n) - 1).real()).margin(1e-12));
    }
  }
}
