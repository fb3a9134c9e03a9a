// stabloc: localize genuine multiparty entanglement over subsystems of graph
// and stabilizer states, in the noiseless and Pauli-noise settings, via the
// graph reduction calculus. Subcommands reproduce the library's batch
// computations as CSV.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stabloc/graph_io.hpp"
#include "stabloc/verify.hpp"

using namespace stabloc;

namespace {

Bits parse_subsystem_nodes(const std::string& text, std::size_t n) {
  Bits s(n);
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t v = std::stoul(part);
    if (v >= n) throw std::invalid_argument("subsystem node " + part + " out of range");
    s.set(v);
  }
  return s;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  return file;
}

Placement parse_placement(const std::string& text) {
  if (text == "bulk") return Placement::bulk;
  if (text == "boundary") return Placement::boundary;
  if (text == "corner") return Placement::corner;
  throw std::invalid_argument("placement '" + text + "' is not bulk, boundary, or corner");
}

/// Supported system selector for the noisy commands:
///   lattice linear/ladder/square + --subsystem bulk|boundary|corner
///   lattice toric:N             + --subsystem loop | loops:d
AlphaCSystem make_system(const std::string& lattice, const std::string& subsystem) {
  LatticeSpec spec = io::parse_lattice(lattice);
  if (spec.kind == LatticeKind::toric) {
    std::size_t np = spec.dims.empty() ? 3 : spec.dims[0];
    if (subsystem == "loop") return make_alpha_c_toric_loop(np);
    if (subsystem.rfind("loops:", 0) == 0) return make_alpha_c_toric_two_loops(np, std::stoul(subsystem.substr(6)));
    throw std::invalid_argument("toric subsystems are `loop` or `loops:<distance>`");
  }
  return make_alpha_c(spec, parse_placement(subsystem));
}

int cmd_reduce(const std::string& graph_file, const std::string& pms, const std::string& outcome_str) {
  std::ifstream in(graph_file);
  if (!in) throw std::runtime_error("cannot open graph file " + graph_file);
  AttributedGraph ag = io::read_graph(in);
  PauliSetup setup = io::parse_setup(pms, ag.size());
  Bits s = setup.unmeasured();

  std::size_t ops = 0;
  AttributedGraph rotated = rotate_setup_to_z(ag.graph, setup, &ops);
  auto rr = reduce_graph(std::move(rotated), s, ops);
  auto oc = classify_outcomes(rr);

  std::cout << "reduced graph:\n";
  io::write_graph(std::cout, rr.reduced);
  std::cout << "regions: S =";
  rr.regions.s.for_each([](node_t v) { std::cout << " " << v; });
  std::cout << " | S1 =";
  rr.regions.s1.for_each([](node_t v) { std::cout << " " << v; });
  std::cout << " | S2 =";
  rr.regions.s2.for_each([](node_t v) { std::cout << " " << v; });
  std::cout << "\nz-measured after reduction:";
  rr.z_set.for_each([](node_t v) { std::cout << " " << v; });
  std::cout << "\nop_count: " << rr.op_count << "\n";
  std::size_t m = setup.measured().count();
  if (oc.gamma) {
    std::cout << "outcomes: all " << (std::uint64_t(1) << m) << " allowed, uniform probability\n";
  } else {
    std::cout << "outcomes: " << oc.forbidden.size() << " forbidden:";
    for (auto k : oc.forbidden) std::cout << " " << io::format_outcome(k, m);
    std::cout << "\n";
  }
  if (!outcome_str.empty()) {
    auto pm = measure_graph(rr, io::parse_outcome(outcome_str, m));
    std::cout << "outcome " << outcome_str << (pm.forbidden ? " (forbidden)" : "")
              << " probability " << io::csv_number(pm.probability) << "\n";
    std::cout << "subgraph on S:\n";
    io::write_graph(std::cout, AttributedGraph(pm.subgraph_on_s, pm.correction));
  }
  return 0;
}

int cmd_lgme(const std::string& graph_file, const std::string& lattice, const std::string& subsystem,
             const std::string& measure_name, unsigned threads) {
  Graph g(0);
  if (!graph_file.empty()) {
    std::ifstream in(graph_file);
    if (!in) throw std::runtime_error("cannot open graph file " + graph_file);
    g = io::read_graph(in).graph;
  } else {
    g = io::build_lattice(io::parse_lattice(lattice));
  }
  Bits s = parse_subsystem_nodes(subsystem, g.size());
  PureMeasure measure = measure_name == "ggm" ? PureMeasure::ggm : PureMeasure::schmidt;
  SweepOptions opt;
  opt.threads = threads;
  auto res = lgme_pure(g, s, measure, opt);
  std::cout << "setups swept: " << res.setups_swept << "\n";
  if (!res.localizable) {
    std::cout << "no connected subgraph: genuine multiparty entanglement not localizable\n";
    return 1;
  }
  std::cout << "distinct connected subgraphs: " << res.connected_labeled << "\n";
  std::cout << "isomorphism classes: " << res.iso_classes << "\n";
  std::cout << "orbits: " << res.orbits.size() << "\n";
  for (std::size_t i = 0; i < res.orbits.size(); ++i) {
    const auto& o = res.orbits[i];
    std::cout << "  orbit " << i << ": " << o.labeled_count << " subgraphs, value " << io::csv_number(o.value);
    if (measure == PureMeasure::schmidt)
      std::cout << " (schmidt bounds " << o.schmidt.lower << ".." << o.schmidt.upper << ")";
    std::cout << ", example " << io::format_setup(setup_from_index(g.size(), s, o.example_setup)) << "\n";
  }
  std::cout << "lgme: " << io::csv_number(res.lgme) << "\n";
  return 0;
}

int cmd_census(const std::string& lattice, std::size_t leg_max, const std::string& out_path, unsigned threads) {
  LatticeSpec spec = io::parse_lattice(lattice);
  if (spec.kind != LatticeKind::ladder)
    throw std::invalid_argument("census: the scaling sweep runs on ladder lattices (`ladder:<rungs>`)");
  std::size_t rungs = spec.dims.empty() ? 8 : spec.dims[0];
  Graph g = ladder_graph(rungs);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "n,log10M\n";
  for (std::size_t n = 2; n <= leg_max; ++n) {
    Bits s(g.size());
    for (std::size_t k = 0; k < n; ++k) s.set(k);  // a linear patch on one leg
    SweepOptions opt;
    opt.threads = threads;
    opt.sweep_limit = g.size() - n;
    std::size_t m = subgraph_census(g, s, opt);
    out << n << "," << io::csv_number(std::log10(double(m))) << "\n";
    out.flush();
  }
  return 0;
}

int cmd_qc(const std::string& lattice, const std::string& subsystem, const std::string& noise,
           const std::string& eps_grid, const std::string& out_path) {
  AlphaCSystem sys = make_system(lattice, subsystem);
  ChannelSpec base = io::parse_channel(noise);
  std::vector<double> grid = io::parse_grid(eps_grid.empty() ? "0:1:0.25" : eps_grid);
  QcCurve curve = qc_curve(sys, base.kind, grid);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "eps,q_c\n";
  for (std::size_t i = 0; i < curve.eps.size(); ++i)
    out << io::csv_number(curve.eps[i]) << "," << io::csv_number(curve.qc[i]) << "\n";
  if (!curve.fit.empty()) {
    std::cerr << "fit coefficients (constant first):";
    for (double c : curve.fit) std::cerr << " " << io::csv_number(c);
    std::cerr << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& lattice, const std::string& subsystem, const std::string& noise,
              const std::string& q_grid, const std::string& out_path) {
  AlphaCSystem sys = make_system(lattice, subsystem);
  ChannelSpec base = io::parse_channel(noise);
  std::vector<double> grid = io::parse_grid(q_grid.empty() ? "0:1:0.05" : q_grid);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "q,E\n";
  NoisyQuantifier quant = sys.cut_a ? NoisyQuantifier::negativity : NoisyQuantifier::gmc;
  for (double q : grid) {
    ChannelSpec spec = base;
    spec.q = q;
    if (q > channel_validity_limit(spec.kind, spec.eps) + 1e-12) break;
    out << io::csv_number(q) << "," << io::csv_number(noisy_lower_bound(sys, spec, quant).value) << "\n";
  }
  return 0;
}

int cmd_check(std::uint64_t seed, std::size_t cases, std::size_t max_n) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.cases = cases;
  opt.max_n = max_n;
  VerifyReport rep = verify_against_oracle(opt);
  std::cout << "pure-state suite: " << rep.graphs << " graphs, " << rep.setups << " setups, " << rep.outcomes
            << " outcomes in " << io::csv_number(rep.pure_seconds) << " s\n";
  std::cout << "  max probability error " << io::csv_number(rep.max_probability_error) << ", min fidelity "
            << io::csv_number(rep.min_fidelity) << ", forbidden mismatches " << rep.forbidden_mismatches << "\n";
  std::cout << "noisy suite: " << rep.noisy_instances << " instances in " << io::csv_number(rep.noisy_seconds)
            << " s\n";
  std::cout << "  max lambda error " << io::csv_number(rep.max_lambda_error) << ", max off-diagonal "
            << io::csv_number(rep.max_offdiagonal) << "\n";
  if (!rep.pass()) {
    std::cout << "FAIL";
    if (!rep.first_failure.empty()) std::cout << ": " << rep.first_failure;
    std::cout << "\n";
    return 1;
  }
  std::cout << "PASS\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"localizable genuine multiparty entanglement over graph-state subsystems"};
  app.require_subcommand(1);

  std::string graph_file, pms, outcome, lattice, subsystem, noise, eps_grid, q_grid, out_path;
  std::string measure_name = "schmidt";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::size_t cases = 200, max_n = 7, leg_max = 8;

  auto* reduce = app.add_subcommand("reduce", "reduce a graph under a Pauli measurement setup");
  reduce->add_option("--graph", graph_file, "graph file")->required();
  reduce->add_option("--pms", pms, "measurement setup, e.g. `pms: 0:X 1:Z`")->required();
  reduce->add_option("--outcome", outcome, "outcome string over measured nodes, e.g. ++-+");

  auto* lgme = app.add_subcommand("lgme", "localizable GME over a subsystem by exhaustive setup sweep");
  lgme->add_option("--graph", graph_file, "graph file");
  lgme->add_option("--lattice", lattice, "lattice spec, e.g. square:4x4");
  lgme->add_option("--subsystem", subsystem, "comma-separated node list")->required();
  lgme->add_option("--measure", measure_name, "schmidt (default) or ggm");
  lgme->add_option("--threads", threads, "worker threads (default: STABLOC_THREADS or hardware)");

  auto* census = app.add_subcommand("census", "connected-subgraph counts along a ladder leg");
  census->add_option("--lattice", lattice, "ladder spec, e.g. ladder:8")->required();
  census->add_option("--leg-max", leg_max, "largest leg patch size (default 8)");
  census->add_option("--out", out_path, "output CSV (default stdout)");
  census->add_option("--threads", threads, "worker threads");

  auto* qc = app.add_subcommand("qc", "critical noise strength against the non-Markovianity parameter");
  qc->add_option("--lattice", lattice, "lattice spec")->required();
  qc->add_option("--subsystem", subsystem, "bulk|boundary|corner or loop|loops:<d>")->required();
  qc->add_option("--noise", noise, "channel, e.g. BF or DP:q=0,eps=0")->required();
  qc->add_option("--eps-grid", eps_grid, "grid a:b:step (default 0:1:0.25)");
  qc->add_option("--out", out_path, "output CSV (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "entanglement against channel strength for a fixed setup");
  sweep->add_option("--lattice", lattice, "lattice spec")->required();
  sweep->add_option("--subsystem", subsystem, "bulk|boundary|corner or loop|loops:<d>")->required();
  sweep->add_option("--noise", noise, "channel, e.g. BF:eps=0.5")->required();
  sweep->add_option("--q-grid", q_grid, "grid a:b:step (default 0:1:0.05)");
  sweep->add_option("--out", out_path, "output CSV (default stdout)");

  auto* check = app.add_subcommand("check", "cross-validate the pipeline against the dense simulator");
  check->add_option("--seed", seed, "random seed (default 1)");
  check->add_option("--cases", cases, "random graphs in the pure suite (default 200)");
  check->add_option("--max-n", max_n, "largest random graph (default 7)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reduce) return cmd_reduce(graph_file, pms, outcome);
    if (*lgme) return cmd_lgme(graph_file, lattice, subsystem, measure_name, threads);
    if (*census) return cmd_census(lattice, leg_max, out_path, threads);
    if (*qc) return cmd_qc(lattice, subsystem, noise, eps_grid, out_path);
    if (*sweep) return cmd_sweep(lattice, subsystem, noise, q_grid, out_path);
    if (*check) return cmd_check(seed, cases, max_n);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
