#pragma once

#include <chrono>
#include <sstream>
#include <string>

#include "stabloc/dense.hpp"
#include "stabloc/graph_io.hpp"
#include "stabloc/random.hpp"
#include "stabloc/subclasses.hpp"

namespace stabloc {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 200;         // random graphs for the pure-state suite
  std::size_t max_n = 7;           // nodes per random graph
  std::size_t max_measured = 4;    // measured-region size cap (3^m setups each)
  std::size_t noisy_cases = 40;    // all-allowed noisy instances to validate
  bool run_noisy = true;
};

struct VerifyReport {
  std::size_t graphs = 0;
  std::size_t setups = 0;
  std::size_t outcomes = 0;
  std::size_t noisy_instances = 0;
  double max_probability_error = 0.0;
  double min_fidelity = 1.0;
  double max_lambda_error = 0.0;
  double max_offdiagonal = 0.0;
  std::size_t forbidden_mismatches = 0;
  double pure_seconds = 0.0;
  double noisy_seconds = 0.0;
  std::string first_failure;

  bool pass() const {
    return forbidden_mismatches == 0 && max_probability_error <= 1e-12 && min_fidelity >= 1.0 - 1e-10 &&
           max_lambda_error <= 1e-10 && max_offdiagonal <= 1e-10 && first_failure.empty();
  }
};

namespace detail {

inline std::string describe_case(const Graph& g, const PauliSetup& setup, std::uint64_t outcome,
                                 std::size_t measured) {
  std::ostringstream os;
  os << "graph{" << g.size() << ":";
  for (auto [i, j] : g.edges()) os << " " << i << "-" << j;
  os << "} " << io::format_setup(setup) << " outcome " << io::format_outcome(outcome, measured);
  return os.str();
}

}  // namespace detail

/// Cross-validates the graph-calculus pipeline against the dense simulator:
/// outcome probabilities, forbidden sets, post-measured states, and (for
/// all-allowed setups under random Pauli noise) the graph-diagonal spectra.
inline VerifyReport verify_against_oracle(const VerifyOptions& opt = {}) {
  VerifyReport rep;
  Rng rng(opt.seed);
  auto clock = [] { return std::chrono::steady_clock::now(); };
  auto seconds = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };

  auto t0 = clock();
  for (std::size_t c = 0; c < opt.cases; ++c) {
    std::size_t n = 3 + rng.bounded(opt.max_n - 2);
    Graph g = random_connected_graph(n, rng);
    std::size_t m = 2 + rng.bounded(std::min(opt.max_measured, n - 1) - 1);
    Bits s_prime(n);
    while (s_prime.count() < m) s_prime.set(rng.bounded(n));
    Bits s = s_prime.complement();
    ++rep.graphs;

    dense::Density rho = dense::density_from_state(dense::graph_state(g));
    for (std::size_t idx = 0; idx < setup_count(m); ++idx) {
      PauliSetup setup = setup_from_index(n, s, idx);
      ++rep.setups;
      auto rr = reduce_graph(rotate_setup_to_z(g, setup), s);
      auto oc = classify_outcomes(rr);
      for (std::uint64_t k = 0; k < (std::uint64_t(1) << m); ++k) {
        ++rep.outcomes;
        auto [p_oracle, rho_s] = dense::project_and_condition(rho, setup, k);
        auto pm = measure_graph(rr, k);
        bool listed = std::find(oc.forbidden.begin(), oc.forbidden.end(), k) != oc.forbidden.end();
        if (listed != pm.forbidden || pm.forbidden != (p_oracle < 1e-14)) {
          ++rep.forbidden_mismatches;
          if (rep.first_failure.empty())
            rep.first_failure = "forbidden-set disagreement: " + detail::describe_case(g, setup, k, m);
          continue;
        }
        rep.max_probability_error = std::max(rep.max_probability_error, std::abs(pm.probability - p_oracle));
        if (pm.forbidden) continue;
        dense::State psi = dense::tagged_state(AttributedGraph(pm.subgraph_on_s, pm.correction));
        double fid = (psi.adjoint() * rho_s * psi).real()(0, 0);
        rep.min_fidelity = std::min(rep.min_fidelity, fid);
        if (fid < 1.0 - 1e-10 && rep.first_failure.empty())
          rep.first_failure = "post-state fidelity " + std::to_string(fid) + ": " +
                              detail::describe_case(g, setup, k, m);
      }
    }
  }
  rep.pure_seconds = seconds(t0, clock());
  if (!opt.run_noisy) return rep;

  const ChannelKind kinds[4] = {ChannelKind::BF, ChannelKind::BPF, ChannelKind::PD, ChannelKind::DP};
  auto t1 = clock();
  for (std::size_t done = 0, guard = 0; done < opt.noisy_cases && guard < 50 * opt.noisy_cases; ++guard) {
    std::size_t n = 3 + rng.bounded(opt.max_n - 2);
    Graph g = random_connected_graph(n, rng);
    std::size_t s_size = 2 + rng.bounded(std::min<std::size_t>(3, n - 1) - 1);
    Bits s(n);
    while (s.count() < s_size) s.set(rng.bounded(n));
    PauliSetup setup(n);
    for (node_t i = 0; i < n; ++i)
      if (!s.test(i)) setup.axes[i] = std::uint8_t(1 + rng.bounded(3));
    auto rr = reduce_graph(rotate_setup_to_z(g, setup), s);
    if (!classify_outcomes(rr).gamma) continue;
    ++done;
    ++rep.noisy_instances;

    std::vector<ChannelSpec> noise;
    std::vector<std::array<double, 4>> probs;
    for (std::size_t i = 0; i < n; ++i) {
      ChannelSpec ch{kinds[rng.bounded(4)], 0.9 * rng.uniform(), rng.uniform()};
      ch.q = std::min(ch.q, 0.95 * channel_validity_limit(ch.kind, ch.eps));
      noise.push_back(ch);
      probs.push_back(channel_probs(ch));
    }
    GDState gd = noisy_gd_state(rr, setup, noise);
    dense::Density rho = dense::apply_channels(dense::density_from_state(dense::graph_state(g)), probs);
    std::size_t m = n - s_size;
    for (std::uint64_t k = 0; k < (std::uint64_t(1) << m); ++k) {
      auto [p, rho_s] = dense::project_and_condition(rho, setup, k);
      rep.max_probability_error =
          std::max(rep.max_probability_error, std::abs(p - std::ldexp(1.0, -int(m))));
      auto pm = measure_graph(rr, k);
      for (std::size_t v = 0; v < pm.s_nodes.size(); ++v)
        dense::apply_1q(rho_s, node_t(v), dense::Mat2(dense::tag_unitary(pm.correction[v]).adjoint()));
      dense::Density in_basis = dense::graph_basis_matrix(rho_s, pm.subgraph_on_s);
      rep.max_offdiagonal = std::max(rep.max_offdiagonal, dense::max_offdiagonal(in_basis));
      for (std::size_t psi = 0; psi < gd.lambdas.size(); ++psi) {
        double err = std::abs(in_basis(Eigen::Index(psi), Eigen::Index(psi)).real() - gd.lambdas[psi]);
        if (err > rep.max_lambda_error) rep.max_lambda_error = err;
        if (err > 1e-10 && rep.first_failure.empty())
          rep.first_failure = "graph-diagonal mismatch: " + detail::describe_case(g, setup, k, m);
      }
    }
  }
  rep.noisy_seconds = seconds(t1, clock());
  return rep;
}

}  // namespace stabloc
