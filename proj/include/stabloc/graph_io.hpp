#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabloc/attributed_graph.hpp"
#include "stabloc/channels.hpp"
#include "stabloc/gd_state.hpp"
#include "stabloc/localizer.hpp"
#include "stabloc/reduction.hpp"

namespace stabloc::io {

inline std::runtime_error parse_error(std::size_t line, const std::string& what) {
  return std::runtime_error("parse error, line " + std::to_string(line) + ": " + what);
}

/// Graph text format: first line the node count, then one `i j` edge per
/// line (0-based endpoints), optionally `tag i <TAG>` lines. `#` starts a
/// comment.
inline AttributedGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_tokens = [&](std::vector<std::string>& toks) {
    toks.clear();
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> toks;
  if (!next_tokens(toks)) throw parse_error(lineno, "missing node count");
  if (toks.size() != 1) throw parse_error(lineno, "expected a single node count");
  std::size_t n = 0;
  try {
    n = std::stoul(toks[0]);
  } catch (const std::exception&) {
    throw parse_error(lineno, "invalid node count '" + toks[0] + "'");
  }
  AttributedGraph ag{Graph(n)};
  while (next_tokens(toks)) {
    if (toks[0] == "tag") {
      if (toks.size() != 3) throw parse_error(lineno, "tag lines read `tag i NAME`");
      std::size_t i = std::stoul(toks[1]);
      if (i >= n) throw parse_error(lineno, "tag node out of range");
      try {
        ag.tags[i] = tag::parse(toks[2]);
      } catch (const std::exception& e) {
        throw parse_error(lineno, e.what());
      }
      continue;
    }
    if (toks.size() != 2) throw parse_error(lineno, "expected `i j` edge");
    std::size_t i = 0, j = 0;
    try {
      i = std::stoul(toks[0]);
      j = std::stoul(toks[1]);
    } catch (const std::exception&) {
      throw parse_error(lineno, "invalid edge endpoints");
    }
    if (i >= n || j >= n) throw parse_error(lineno, "edge endpoint out of range");
    if (i == j) throw parse_error(lineno, "self-loops are not allowed");
    ag.graph.add_edge(node_t(i), node_t(j));
  }
  return ag;
}

inline void write_graph(std::ostream& out, const AttributedGraph& ag) {
  out << ag.size() << "\n";
  for (auto [i, j] : ag.graph.edges()) out << i << " " << j << "\n";
  for (node_t i = 0; i < ag.size(); ++i)
    if (ag.tags[i] != CliffordTag::I) out << "tag " << i << " " << tag::name(ag.tags[i]) << "\n";
}

/// Setup strings: `pms: 0:X 1:Y 5:Z` (the prefix is optional). Unlisted
/// nodes are unmeasured.
inline PauliSetup parse_setup(const std::string& text, std::size_t n) {
  PauliSetup setup(n);
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "pms:" || tok == "pms") continue;
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("setup token '" + tok + "' is not node:AXIS");
    std::size_t node = 0;
    try {
      node = std::stoul(tok.substr(0, colon));
    } catch (const std::exception&) {
      throw std::invalid_argument("setup token '" + tok + "' has a bad node index");
    }
    if (node >= n) throw std::invalid_argument("setup node " + std::to_string(node) + " out of range");
    std::string axis = tok.substr(colon + 1);
    if (axis == "X" || axis == "x" || axis == "1")
      setup.axes[node] = 1;
    else if (axis == "Y" || axis == "y" || axis == "2")
      setup.axes[node] = 2;
    else if (axis == "Z" || axis == "z" || axis == "3")
      setup.axes[node] = 3;
    else
      throw std::invalid_argument("setup axis '" + axis + "' is not X, Y, or Z");
  }
  return setup;
}

inline std::string format_setup(const PauliSetup& setup) {
  std::string out = "pms:";
  const char* names = "?XYZ";
  for (node_t i = 0; i < setup.size(); ++i)
    if (setup.axes[i]) {
      out += " " + std::to_string(i) + ":";
      out += names[setup.axes[i]];
    }
  return out;
}

/// Outcome strings over the measured nodes in ascending order: `+` for the
/// +1 eigenvalue, `-` for -1.
inline std::uint64_t parse_outcome(const std::string& text, std::size_t measured) {
  if (text.size() != measured)
    throw std::invalid_argument("outcome string length " + std::to_string(text.size()) + ", expected " +
                                std::to_string(measured));
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '-')
      bits |= std::uint64_t(1) << k;
    else if (text[k] != '+')
      throw std::invalid_argument("outcome characters must be + or -");
  }
  return bits;
}

inline std::string format_outcome(std::uint64_t bits, std::size_t measured) {
  std::string s(measured, '+');
  for (std::size_t k = 0; k < measured; ++k)
    if ((bits >> k) & 1) s[k] = '-';
  return s;
}

/// Channel strings: `BF:q=0.3,eps=0.5` (eps optional, defaults to 0).
inline ChannelSpec parse_channel(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  ChannelSpec spec;
  if (kind == "BF")
    spec.kind = ChannelKind::BF;
  else if (kind == "BPF")
    spec.kind = ChannelKind::BPF;
  else if (kind == "PD")
    spec.kind = ChannelKind::PD;
  else if (kind == "DP")
    spec.kind = ChannelKind::DP;
  else
    throw std::invalid_argument("channel kind '" + kind + "' is not BF, BPF, PD, or DP");
  if (colon == std::string::npos) return spec;
  std::istringstream in(text.substr(colon + 1));
  std::string part;
  while (std::getline(in, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("channel parameter '" + part + "' is not key=value");
    std::string key = part.substr(0, eq);
    double value = std::stod(part.substr(eq + 1));
    if (key == "q")
      spec.q = value;
    else if (key == "eps")
      spec.eps = value;
    else
      throw std::invalid_argument("channel parameter '" + key + "' is not q or eps");
  }
  channel_probs(spec);  // validate
  return spec;
}

/// Lattice strings: `linear:12`, `ladder:8`, `square:5x5`, `cubic:3x3x3`,
/// `toric:3`.
inline LatticeSpec parse_lattice(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  LatticeSpec spec;
  if (kind == "linear")
    spec.kind = LatticeKind::linear;
  else if (kind == "ladder")
    spec.kind = LatticeKind::ladder;
  else if (kind == "square")
    spec.kind = LatticeKind::square;
  else if (kind == "cubic")
    spec.kind = LatticeKind::cubic;
  else if (kind == "toric")
    spec.kind = LatticeKind::toric;
  else
    throw std::invalid_argument("lattice kind '" + kind + "' unknown");
  if (colon != std::string::npos) {
    std::istringstream in(text.substr(colon + 1));
    std::string part;
    while (std::getline(in, part, 'x')) spec.dims.push_back(std::stoul(part));
  }
  return spec;
}

inline Graph build_lattice(const LatticeSpec& spec) {
  switch (spec.kind) {
    case LatticeKind::linear: return linear_graph(spec.dims.empty() ? 12 : spec.dims[0]);
    case LatticeKind::ladder: return ladder_graph(spec.dims.empty() ? 6 : spec.dims[0]);
    case LatticeKind::square: {
      std::size_t rows = spec.dims.size() > 0 ? spec.dims[0] : 4;
      std::size_t cols = spec.dims.size() > 1 ? spec.dims[1] : rows;
      return square_graph(rows, cols);
    }
    case LatticeKind::cubic: {
      std::size_t nx = spec.dims.size() > 0 ? spec.dims[0] : 3;
      std::size_t ny = spec.dims.size() > 1 ? spec.dims[1] : nx;
      std::size_t nz = spec.dims.size() > 2 ? spec.dims[2] : ny;
      return cubic_graph(nx, ny, nz);
    }
    case LatticeKind::toric: return toric_graph_state(spec.dims.empty() ? 3 : spec.dims[0]).state.graph;
  }
  throw std::invalid_argument("build_lattice: unknown kind");
}

/// eps grids: `a:b:step` inclusive of both ends within a half step.
inline std::vector<double> parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string part;
  std::vector<double> parts;
  while (std::getline(in, part, ':')) parts.push_back(std::stod(part));
  if (parts.size() == 1) return {parts[0]};
  if (parts.size() != 3 || parts[2] <= 0) throw std::invalid_argument("grids read a:b:step");
  std::vector<double> grid;
  for (double v = parts[0]; v <= parts[1] + parts[2] / 2; v += parts[2]) grid.push_back(v);
  return grid;
}

/// Values in CSV output carry 9 significant digits.
inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline void write_gd_csv(std::ostream& out, const GDState& gd) {
  out << "psi,lambda\n";
  for (std::size_t psi = 0; psi < gd.lambdas.size(); ++psi) {
    std::string bits(gd.qubits(), '0');
    for (std::size_t b = 0; b < gd.qubits(); ++b)
      if ((psi >> b) & 1) bits[b] = '1';
    out << bits << "," << csv_number(gd.lambdas[psi]) << "\n";
  }
  if (gd.coherence) out << "coherence," << csv_number(*gd.coherence) << "\n";
}

inline GDState read_gd_csv(std::istream& in, const Graph& basis) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("psi,lambda", 0) != 0)
    throw std::runtime_error("gd csv: missing psi,lambda header");
  GDState gd(basis, std::vector<double>(std::size_t(1) << basis.size(), 0.0));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw parse_error(lineno, "expected psi,lambda");
    std::string key = line.substr(0, comma);
    double value = std::stod(line.substr(comma + 1));
    if (key == "coherence") {
      gd.coherence = value;
      continue;
    }
    if (key.size() != basis.size()) throw parse_error(lineno, "psi bitstring has the wrong length");
    std::size_t psi = 0;
    for (std::size_t b = 0; b < key.size(); ++b) {
      if (key[b] == '1')
        psi |= std::size_t(1) << b;
      else if (key[b] != '0')
        throw parse_error(lineno, "psi must be a 01-bitstring");
    }
    gd.lambdas[psi] = value;
  }
  return gd;
}

}  // namespace stabloc::io
