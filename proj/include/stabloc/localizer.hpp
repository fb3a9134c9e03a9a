#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabloc/lattices.hpp"
#include "stabloc/measures.hpp"
#include "stabloc/parallel.hpp"
#include "stabloc/subclasses.hpp"

namespace stabloc {

// ---------------------------------------------------------------------------
// Pure-state sweeps: enumerate every Pauli setup on the measured region,
// collect the connected post-measurement subgraphs, and classify them.
// ---------------------------------------------------------------------------

/// Number of Pauli setups on m measured nodes.
inline std::size_t setup_count(std::size_t m) {
  if (m > 25) throw std::invalid_argument("setup_count: sweep too large");
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  return total;
}

/// The index-th setup in the lexicographic stream over the measured nodes
/// (the axis of the lowest measured node varies fastest).
inline PauliSetup setup_from_index(std::size_t n, const Bits& s, std::size_t index) {
  PauliSetup p(n);
  for (node_t i = 0; i < n; ++i) {
    if (s.test(i)) continue;
    p.axes[i] = std::uint8_t(1 + index % 3);
    index /= 3;
  }
  return p;
}

enum class PureMeasure { schmidt, ggm };

struct OrbitInfo {
  std::uint64_t canonical = 0;
  std::size_t labeled_count = 0;  // distinct labeled subgraphs in this orbit
  SchmidtBounds schmidt;
  double value = 0.0;  // measure value of the orbit representative
  Graph representative;
  std::size_t example_setup = 0;  // sweep index of one setup reaching the orbit
};

struct SweepResult {
  std::size_t setups_swept = 0;
  std::size_t connected_labeled = 0;  // M: distinct labeled connected subgraphs
  std::size_t iso_classes = 0;
  std::vector<OrbitInfo> orbits;
  double lgme = 0.0;
  bool localizable = false;  // false when no setup yields a connected subgraph
};

struct SweepOptions {
  std::size_t sweep_limit = 16;  // measured nodes
  unsigned threads = 0;          // 0: resolve from the environment
  bool classify = true;          // group into isomorphism classes and orbits
  bool values = true;            // compute measure values per orbit
};

/// Sweeps all 3^m setups, recording each distinct labeled connected subgraph
/// on s. Census counts follow labeled adjacency; orbit classification merges
/// local complementation and isomorphism.
inline SweepResult sweep_connected_subgraphs(const Graph& g, const Bits& s,
                                             PureMeasure measure = PureMeasure::schmidt,
                                             const SweepOptions& opt = {}) {
  std::size_t n = g.size();
  std::size_t s_size = s.count();
  std::size_t m = n - s_size;
  if (s_size < 2 || s_size > 8) throw std::invalid_argument("sweep: subsystem must hold 2..8 nodes");
  if (m > opt.sweep_limit) throw std::invalid_argument("sweep: measured region exceeds the limit");
  std::size_t total = setup_count(m);

  unsigned workers = resolve_threads(opt.threads);
  struct Hit {
    Graph graph;
    std::size_t setup_index;
  };
  std::vector<std::map<std::uint64_t, Hit>> found(workers);

  parallel_for(total, opt.threads, [&](unsigned w, std::size_t idx) {
    PauliSetup setup = setup_from_index(n, s, idx);
    auto rr = reduce_graph(rotate_setup_to_z(g, setup), s);
    auto pm = measure_graph(rr, 0);
    if (!is_connected(pm.subgraph_on_s)) return;
    std::uint64_t key = adjacency_key(pm.subgraph_on_s);
    auto& slot = found[w];
    if (!slot.count(key)) slot.emplace(key, Hit{pm.subgraph_on_s, idx});
  });

  std::map<std::uint64_t, Hit> merged;
  for (auto& slot : found)
    for (auto& [key, hit] : slot) {
      auto it = merged.find(key);
      if (it == merged.end() || hit.setup_index < it->second.setup_index) merged.insert_or_assign(key, hit);
    }

  SweepResult res;
  res.setups_swept = total;
  res.connected_labeled = merged.size();
  res.localizable = !merged.empty();
  if (!opt.classify || merged.empty()) return res;

  // isomorphism classes, then orbits under local complementation
  std::map<std::uint64_t, std::vector<const Hit*>> classes;
  for (auto& [key, hit] : merged) classes[canonical_key(hit.graph)].push_back(&hit);
  res.iso_classes = classes.size();

  std::map<std::uint64_t, std::size_t> orbit_of;  // canonical key -> orbit id
  for (auto& [canon, hits] : classes) {
    if (orbit_of.count(canon)) continue;
    std::size_t id = res.orbits.size();
    OrbitInfo info;
    info.canonical = canon;
    info.representative = hits.front()->graph;
    info.example_setup = hits.front()->setup_index;
    res.orbits.push_back(std::move(info));
    for (std::uint64_t member : lc_orbit(hits.front()->graph)) orbit_of.emplace(member, id);
  }
  for (auto& [canon, hits] : classes) res.orbits[orbit_of.at(canon)].labeled_count += hits.size();

  if (opt.values) {
    for (auto& o : res.orbits) {
      if (measure == PureMeasure::schmidt) {
        o.schmidt = schmidt_bounds(o.representative);
        o.value = double(o.schmidt.lower);
      } else {
        o.value = ggm_pure(dense::graph_state(o.representative));
      }
      res.lgme = std::max(res.lgme, o.value);
    }
  }
  return res;
}

inline SweepResult lgme_pure(const Graph& g, const Bits& s, PureMeasure measure = PureMeasure::schmidt,
                             const SweepOptions& opt = {}) {
  return sweep_connected_subgraphs(g, s, measure, opt);
}

/// Schmidt-measure sweep for subsystems past the labeled-census cap
/// (9..12 nodes): deduplicates raw adjacencies, takes the rank lower bound
/// per distinct subgraph, and confirms the winner with the persistency upper
/// bound when it is small enough to enumerate.
inline double lgme_schmidt_large(const Graph& g, const Bits& s, const SweepOptions& opt = {}) {
  std::size_t n = g.size();
  std::size_t s_size = s.count();
  std::size_t m = n - s_size;
  if (s_size < 2 || s_size > 12) throw std::invalid_argument("lgme_schmidt_large: subsystem must hold 2..12 nodes");
  if (m > opt.sweep_limit) throw std::invalid_argument("lgme_schmidt_large: measured region exceeds the limit");
  std::size_t total = setup_count(m);
  unsigned workers = resolve_threads(opt.threads);
  std::vector<std::map<std::vector<std::uint64_t>, Graph>> found(workers);
  parallel_for(total, opt.threads, [&](unsigned w, std::size_t idx) {
    auto rr = reduce_graph(rotate_setup_to_z(g, setup_from_index(n, s, idx)), s);
    auto pm = measure_graph(rr, 0);
    if (!is_connected(pm.subgraph_on_s)) return;
    std::vector<std::uint64_t> key;
    for (node_t v = 0; v < pm.subgraph_on_s.size(); ++v) {
      Bits nb = pm.subgraph_on_s.neighborhood(v);
      key.insert(key.end(), nb.words().begin(), nb.words().end());
    }
    found[w].emplace(std::move(key), pm.subgraph_on_s);
  });
  double best = -1.0;
  const Graph* best_graph = nullptr;
  std::map<std::vector<std::uint64_t>, Graph> merged;
  for (auto& slot : found)
    for (auto& [key, graph] : slot) merged.emplace(key, graph);
  for (auto& [key, graph] : merged) {
    double lower = double(schmidt_lower(graph));
    if (lower > best) {
      best = lower;
      best_graph = &graph;
    }
  }
  if (!best_graph) return -1.0;  // nothing connected: not localizable
  if (best_graph->size() <= 10 && schmidt_upper(*best_graph) != std::size_t(best))
    throw std::runtime_error("lgme_schmidt_large: bounds disagree on the maximizing subgraph");
  return best;
}

/// Census only: the number of distinct labeled connected subgraphs.
inline std::size_t subgraph_census(const Graph& g, const Bits& s, const SweepOptions& opt_in = {}) {
  SweepOptions opt = opt_in;
  opt.classify = false;
  opt.values = false;
  return sweep_connected_subgraphs(g, s, PureMeasure::schmidt, opt).connected_labeled;
}

// ---------------------------------------------------------------------------
// Noise-ready measurement setups for the standard lattice families.
// ---------------------------------------------------------------------------

enum class LatticeKind { linear, ladder, square, cubic, toric };
enum class Placement { bulk, boundary, corner };

struct LatticeSpec {
  LatticeKind kind = LatticeKind::linear;
  std::vector<std::size_t> dims;
};

inline const char* placement_name(Placement p) {
  switch (p) {
    case Placement::bulk: return "bulk";
    case Placement::boundary: return "boundary";
    case Placement::corner: return "corner";
  }
  return "?";
}

/// A concrete localization instance in the graph frame: the graph, the
/// unmeasured region, the measurement setup, and the per-node Clifford frame
/// relating physical noise to graph-frame noise (identity except for
/// stabilizer states carried onto a graph by local Cliffords).
struct AlphaCSystem {
  Graph graph;
  Bits s;
  PauliSetup setup;
  std::vector<CliffordTag> frame_tags;
  std::optional<Bits> cut_a;  // bipartition for two-region negativity
  std::string description;
};

/// Physical channel as seen in the graph frame on a node: conjugation by the
/// frame tag permutes which Pauli axis the channel damps; the depolarizing
/// channel is symmetric and unaffected.
inline ChannelSpec conjugate_channel_spec(CliffordTag t, const ChannelSpec& c) {
  if (c.kind == ChannelKind::DP) return c;
  int axis = c.kind == ChannelKind::BF ? 1 : c.kind == ChannelKind::BPF ? 2 : 3;
  int moved = conjugate_pauli(t, axis);
  ChannelSpec out = c;
  out.kind = moved == 1 ? ChannelKind::BF : moved == 2 ? ChannelKind::BPF : ChannelKind::PD;
  return out;
}

inline std::vector<ChannelSpec> per_node_channels(const AlphaCSystem& sys, const ChannelSpec& physical) {
  std::vector<ChannelSpec> out;
  out.reserve(sys.graph.size());
  for (node_t q = 0; q < sys.graph.size(); ++q)
    out.push_back(conjugate_channel_spec(sys.frame_tags[q], physical));
  return out;
}

/// Measurement pattern for the noisy lower bounds on the lattice families:
/// Z measurements everywhere outside a four-node connected patch. Every
/// outcome stays allowed, the patch keeps its induced subgraph (a path or a
/// four-cycle, both in the linear-cluster orbit), and the pattern extends to
/// any lattice size unchanged.
inline AlphaCSystem make_alpha_c(const LatticeSpec& spec, Placement place) {
  AlphaCSystem sys;
  switch (spec.kind) {
    case LatticeKind::linear: {
      std::size_t n = spec.dims.empty() ? 12 : spec.dims[0];
      if (n < 6) throw std::invalid_argument("alpha_c: linear graph too small");
      sys.graph = linear_graph(n);
      std::size_t base = place == Placement::bulk ? (n - 4) / 2 : 0;
      if (place == Placement::bulk && base < 1) throw std::invalid_argument("alpha_c: no bulk placement");
      sys.s = Bits(n);
      for (std::size_t k = 0; k < 4; ++k) sys.s.set(base + k);
      sys.description = std::string("linear-") + placement_name(place);
      break;
    }
    case LatticeKind::ladder: {
      std::size_t rungs = spec.dims.empty() ? 6 : spec.dims[0];
      if (rungs < 4) throw std::invalid_argument("alpha_c: ladder too short");
      sys.graph = ladder_graph(rungs);
      std::size_t base = place == Placement::bulk ? (rungs - 2) / 2 : 0;
      if (place == Placement::bulk && base < 1) throw std::invalid_argument("alpha_c: no bulk placement");
      sys.s = Bits(2 * rungs);
      sys.s.set(base);
      sys.s.set(base + 1);
      sys.s.set(rungs + base);
      sys.s.set(rungs + base + 1);
      sys.description = std::string("ladder-") + placement_name(place);
      break;
    }
    case LatticeKind::square: {
      std::size_t rows = spec.dims.size() > 0 ? spec.dims[0] : 5;
      std::size_t cols = spec.dims.size() > 1 ? spec.dims[1] : rows;
      if (rows < 4 || cols < 4) throw std::invalid_argument("alpha_c: square grid too small");
      sys.graph = square_graph(rows, cols);
      std::size_t r0 = 0, c0 = 0;
      if (place == Placement::boundary) c0 = (cols - 2) / 2;
      if (place == Placement::bulk) {
        r0 = (rows - 2) / 2;
        c0 = (cols - 2) / 2;
      }
      sys.s = Bits(rows * cols);
      sys.s.set(r0 * cols + c0);
      sys.s.set(r0 * cols + c0 + 1);
      sys.s.set((r0 + 1) * cols + c0);
      sys.s.set((r0 + 1) * cols + c0 + 1);
      sys.description = std::string("square-") + placement_name(place);
      break;
    }
    default: throw std::invalid_argument("alpha_c: unsupported lattice for a four-node patch");
  }
  sys.setup = PauliSetup::all_z_except(sys.graph.size(), sys.s);
  sys.frame_tags.assign(sys.graph.size(), CliffordTag::I);
  return sys;
}

/// Toric-code loop setup: X measurements on the control qubits and Z
/// elsewhere, which in the graph frame is the all-Z pattern; the loop
/// reduces to a star around its hub.
inline AlphaCSystem make_alpha_c_toric_loop(std::size_t n_p) {
  ToricGraphState t = toric_graph_state(n_p);
  AlphaCSystem sys;
  sys.graph = t.state.graph;
  sys.s = t.layout.loop(0);
  sys.setup = PauliSetup::all_z_except(sys.graph.size(), sys.s);
  sys.frame_tags = t.state.tags;
  sys.description = "toric-loop";
  return sys;
}

/// Two-loop setup: the loops at columns 0 and d both reduce to stars; the
/// path pattern (one Y-measured edge node, X along the rest of the path,
/// Z elsewhere) welds them with a direct link so bipartite entanglement
/// across the loops survives the measurement.
inline AlphaCSystem make_alpha_c_toric_two_loops(std::size_t n_p, std::size_t d) {
  if (d == 0 || d >= n_p) throw std::invalid_argument("two loops: distance must be in (0, n_p)");
  ToricGraphState t = toric_graph_state(n_p, {0, d});
  Bits a = t.layout.loop(0), b = t.layout.loop(d);
  Bits s = a | b;
  const Graph& g = t.state.graph;
  std::size_t n = g.size();

  // Shortest connecting path through measured nodes whose end nodes touch the
  // adjacent region exactly once and whose interior nodes avoid both regions;
  // that shape guarantees the reduction welds a single direct link without
  // rewiring the loops internally.
  auto links_into = [&](node_t v, const Bits& region) { return (g.neighborhood(v) & region).count(); };
  std::vector<node_t> path;
  for (node_t v = 0; v < n && path.empty(); ++v)
    if (!s.test(v) && links_into(v, a) == 1 && links_into(v, b) == 1) path.push_back(v);
  if (path.empty()) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::vector<node_t> queue;
    for (node_t v = 0; v < n; ++v) {
      if (s.test(v)) continue;
      if (links_into(v, a) == 1 && links_into(v, b) == 0) {
        dist[v] = 0;
        queue.push_back(v);
      }
    }
    int target = -1;
    for (std::size_t qi = 0; qi < queue.size() && target < 0; ++qi) {
      node_t v = queue[qi];
      if (links_into(v, b) == 1 && links_into(v, a) == 0 && dist[v] > 0) {
        target = int(v);
        break;
      }
      g.neighborhood(v).for_each([&](node_t w) {
        if (s.test(w) || dist[w] >= 0) return;
        bool endpoint = links_into(w, b) == 1 && links_into(w, a) == 0;
        bool interior = links_into(w, a) == 0 && links_into(w, b) == 0;
        if (!endpoint && !interior) return;
        dist[w] = dist[v] + 1;
        parent[w] = int(v);
        queue.push_back(w);
      });
    }
    if (target < 0) throw std::runtime_error("two loops: no admissible connecting path");
    for (int v = target; v >= 0; v = parent[v]) path.push_back(node_t(v));
    std::reverse(path.begin(), path.end());
  }

  AlphaCSystem sys;
  sys.graph = g;
  sys.s = s;
  sys.setup = PauliSetup::all_z_except(n, s);
  sys.setup.axes[path.front()] = 2;  // Y on one edge node
  for (std::size_t k = 1; k < path.size(); ++k) sys.setup.axes[path[k]] = 1;  // X along the path
  sys.frame_tags = t.state.tags;
  sys.cut_a = a;
  sys.description = "toric-two-loops";
  return sys;
}

// ---------------------------------------------------------------------------
// Noisy lower bounds and critical noise strengths.
// ---------------------------------------------------------------------------

enum class NoisyQuantifier { gme_flag, gmc, negativity };

struct NoisyBound {
  GDState gd;
  double value = 0.0;  // 1/0 for the flag quantifier
};

inline GDState noisy_gd_for(const AlphaCSystem& sys, const ChannelSpec& physical) {
  auto rr = reduce_graph(rotate_setup_to_z(sys.graph, sys.setup), sys.s);
  return noisy_gd_state(rr, sys.setup, per_node_channels(sys, physical));
}

/// GME verdict for the graph-diagonal states this module produces: star
/// bases (any size) take the GHZ-diagonal criterion, other connected
/// four-qubit bases the cluster criteria, connected two/three-qubit bases
/// map onto the star first.
inline bool gme_present(const GDState& gd) {
  std::size_t n = gd.qubits();
  if (n == 4) return gd4_gme_test(gd);
  if (n <= 3) {
    Graph star(n);
    for (node_t i = 1; i < n; ++i) star.add_edge(0, i);
    return ghzd_gme_test(map_to_basis(gd, star));
  }
  // larger subsystems arrive on a literal star basis (any hub position)
  return ghzd_gme_test(gd);
}

inline NoisyBound noisy_lower_bound(const AlphaCSystem& sys, const ChannelSpec& physical, NoisyQuantifier quant) {
  NoisyBound nb;
  nb.gd = noisy_gd_for(sys, physical);
  switch (quant) {
    case NoisyQuantifier::gme_flag: nb.value = gme_present(nb.gd) ? 1.0 : 0.0; break;
    case NoisyQuantifier::gmc: nb.value = gmc(nb.gd); break;
    case NoisyQuantifier::negativity: {
      if (!sys.cut_a) throw std::invalid_argument("noisy bound: negativity needs a designated cut");
      Bits local(nb.gd.qubits());
      std::size_t idx = 0;
      sys.s.for_each([&](node_t v) {
        if (sys.cut_a->test(v)) local.set(idx);
        ++idx;
      });
      nb.value = gd_negativity(nb.gd, local);
      break;
    }
  }
  return nb;
}

namespace detail {

/// Per-factor flip weights of the hub-pair coherence for states in the pure
/// dephasing family (lambda supported on the empty and hub indices alone):
/// each subsystem channel component whose psi mask is exactly the hub bit,
/// and each measured-neighbour subclass attached exactly to the hub.
struct DephasingFamily {
  // flip weight as a function of q for every independent factor
  std::vector<std::function<double(double)>> flips;
};

inline std::optional<DephasingFamily> dephasing_family(const AlphaCSystem& sys, ChannelKind kind, double eps) {
  GDState probe = noisy_gd_for(sys, {kind, std::min(0.25, channel_validity_limit(kind, eps)), eps});
  std::size_t n = probe.qubits();
  node_t hub = 0;
  bool star = false;
  for (node_t v = 0; v < n && !star; ++v)
    if (probe.basis_graph.degree(v) == n - 1) {
      hub = v;
      star = true;
    }
  if (!star) return std::nullopt;
  std::uint64_t hub_mask = std::uint64_t(1) << hub;
  for (std::size_t psi = 0; psi < probe.lambdas.size(); ++psi)
    if (psi != 0 && psi != hub_mask && std::abs(probe.lambdas[psi]) > 1e-13) return std::nullopt;

  auto rr = reduce_graph(rotate_setup_to_z(sys.graph, sys.setup), sys.s);
  auto pm = measure_graph(rr, 0);
  DephasingFamily fam;
  for (std::size_t k = 0; k < pm.s_nodes.size(); ++k) {
    node_t v = pm.s_nodes[k];
    CliffordTag frame = sys.frame_tags[v];
    CliffordTag reduction = rr.reduced.tags[v];
    std::uint64_t nb_mask = 0;
    probe.basis_graph.neighborhood(node_t(k)).for_each([&](node_t j) { nb_mask |= std::uint64_t(1) << j; });
    std::uint64_t self = std::uint64_t(1) << k;
    const std::array<std::uint64_t, 4> masks{0, nb_mask, nb_mask ^ self, self};
    fam.flips.push_back([=](double q) {
      ChannelSpec c = conjugate_channel_spec(frame, {kind, q, eps});
      PauliProbs p = conjugate_channel(reduction, channel_probs(c));
      double w = 0.0;
      for (int comp = 0; comp < 4; ++comp)
        if (masks[std::size_t(comp)] == hub_mask) w += p[std::size_t(comp)];
      return w;
    });
  }
  double probe_q = std::min(0.25, channel_validity_limit(kind, eps));
  SubclassPartition part = partition_subclasses(rr, sys.setup, per_node_channels(sys, {kind, probe_q, eps}));
  auto add_members = [&](const Subclass& sub) {
    if (sub.members.empty()) return;
    if (sub.s_neighborhood != hub_mask)
      throw std::logic_error("dephasing family: unexpected subclass despite pure support");
    for (node_t j : sub.members) {
      CliffordTag frame = sys.frame_tags[j];
      CliffordTag reduction = rr.reduced.tags[j];
      std::uint8_t axis = sys.setup.axes[j];
      fam.flips.push_back([=](double q) {
        ChannelSpec c = conjugate_channel_spec(frame, {kind, q, eps});
        PauliProbs base = channel_probs(c);
        PauliProbs out{0, 0, 0, 0};
        for (int sp = 0; sp < 4; ++sp) {
          int s1 = conjugate_axis_through_rotation(axis, sp);
          out[std::size_t(conjugate_pauli(reduction, s1))] += base[std::size_t(sp)];
        }
        return flip_probability(out, 3);
      });
    }
  };
  for (const auto& sub : part.singles) add_members(sub);
  for (const auto& sub : part.multis) add_members(sub);
  return fam;
}

}  // namespace detail

/// Critical channel strength: the point where the chosen setup's localized
/// GME disappears. States in the pure dephasing family lose GME only at the
/// isolated root of a coherence factor, so that root is bisected directly;
/// everything else takes a coarse 1e-3 scan refined by bisection to 1e-6.
/// Returns 1 when GME survives the whole admissible range.
inline double critical_noise(const AlphaCSystem& sys, ChannelKind kind, double eps) {
  if (auto fam = detail::dephasing_family(sys, kind, eps)) {
    double qc = 1.0;
    for (const auto& flip : fam->flips) {
      if (1.0 - 2.0 * flip(1.0) > 0.0) continue;  // no root for this factor
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (1.0 - 2.0 * flip(mid) > 0.0 ? lo : hi) = mid;
      }
      qc = std::min(qc, 0.5 * (lo + hi));
    }
    return qc;
  }

  double limit = channel_validity_limit(kind, eps);
  auto gme_at = [&](double q) { return gme_present(noisy_gd_for(sys, {kind, q, eps})); };
  if (!gme_at(0.0)) return 0.0;
  const double step = 1e-3;
  double prev = 0.0;
  for (double q = step;; q += step) {
    double qq = std::min(q, limit);
    if (!gme_at(qq)) {
      double lo = prev, hi = qq;
      while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        (gme_at(mid) ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = qq;
    if (qq >= limit) break;
  }
  return 1.0;
}

struct QcCurve {
  std::vector<double> eps;
  std::vector<double> qc;
  std::vector<double> fit;  // polynomial coefficients, constant term first
};

/// Least-squares polynomial fit through (x, y), constant term first.
inline std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y,
                                   std::size_t degree) {
  std::size_t terms = degree + 1;
  std::vector<std::vector<double>> ata(terms, std::vector<double>(terms, 0.0));
  std::vector<double> atb(terms, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<double> pw(2 * terms, 1.0);
    for (std::size_t i = 1; i < 2 * terms; ++i) pw[i] = pw[i - 1] * x[k];
    for (std::size_t i = 0; i < terms; ++i) {
      for (std::size_t j = 0; j < terms; ++j) ata[i][j] += pw[i + j];
      atb[i] += pw[i] * y[k];
    }
  }
  for (std::size_t c = 0; c < terms; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < terms; ++r)
      if (std::abs(ata[r][c]) > std::abs(ata[piv][c])) piv = r;
    std::swap(ata[c], ata[piv]);
    std::swap(atb[c], atb[piv]);
    for (std::size_t r = 0; r < terms; ++r) {
      if (r == c || ata[c][c] == 0.0) continue;
      double f = ata[r][c] / ata[c][c];
      for (std::size_t cc = 0; cc < terms; ++cc) ata[r][cc] -= f * ata[c][cc];
      atb[r] -= f * atb[c];
    }
  }
  std::vector<double> coef(terms);
  for (std::size_t i = 0; i < terms; ++i) coef[i] = atb[i] / ata[i][i];
  return coef;
}

inline QcCurve qc_curve(const AlphaCSystem& sys, ChannelKind kind, const std::vector<double>& eps_grid) {
  QcCurve curve;
  for (double e : eps_grid) {
    curve.eps.push_back(e);
    curve.qc.push_back(critical_noise(sys, kind, e));
  }
  std::size_t degree = kind == ChannelKind::DP ? 3 : 2;
  if (curve.eps.size() > degree) curve.fit = polyfit(curve.eps, curve.qc, degree);
  return curve;
}

/// Negativity between the two toric loops as a function of channel strength.
inline std::vector<std::pair<double, double>> two_loop_negativity(std::size_t n_p, std::size_t d,
                                                                  ChannelKind kind, double eps,
                                                                  const std::vector<double>& q_grid) {
  if (2 * n_p > 12) throw std::invalid_argument("two_loop_negativity: loops too large");
  AlphaCSystem sys = make_alpha_c_toric_two_loops(n_p, d);
  std::vector<std::pair<double, double>> curve;
  for (double q : q_grid)
    curve.emplace_back(q, noisy_lower_bound(sys, {kind, q, eps}, NoisyQuantifier::negativity).value);
  return curve;
}

}  // namespace stabloc
