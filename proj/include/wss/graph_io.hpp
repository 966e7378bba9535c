#pragma once

// Plain-text graph format, one record per line:
//
//   V <id> <m> <c>      vertex with measure m > 0 and killing c >= 0
//   E <id1> <id2> <b>   undirected edge with weight b > 0
//
// '#' starts a comment. Vertex ids must be exactly 0..n-1, each declared once.

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "wss/error.hpp"
#include "wss/format.hpp"
#include "wss/graph.hpp"

namespace wss {

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline double parse_real(const std::string& tok, int line, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + tok + "'", line);
  }
}

inline Vertex parse_id(const std::string& tok, int line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("vertex id must be a nonnegative integer, got '" + tok + "'", line);
  }
  try {
    return static_cast<Vertex>(std::stoull(tok));
  } catch (const std::exception&) {
    throw ParseError("vertex id out of range '" + tok + "'", line);
  }
}

}  // namespace detail

inline WeightedGraph read_graph(std::istream& in) {
  std::map<Vertex, std::pair<double, double>> vertices;
  std::vector<std::pair<Edge, int>> edges;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(detail::strip_comment(raw));
    std::string tag;
    if (!(ls >> tag)) continue;
    std::string a, b, c, extra;
    if (!(ls >> a >> b >> c) || (ls >> extra)) {
      throw ParseError("expected '" + tag + "' followed by exactly three fields", lineno);
    }
    if (tag == "V") {
      Vertex id = detail::parse_id(a, lineno);
      double m = detail::parse_real(b, lineno, "measure");
      double k = detail::parse_real(c, lineno, "killing");
      if (!vertices.emplace(id, std::make_pair(m, k)).second) {
        throw ParseError("vertex " + a + " declared twice", lineno);
      }
    } else if (tag == "E") {
      Edge e{detail::parse_id(a, lineno), detail::parse_id(b, lineno),
             detail::parse_real(c, lineno, "edge weight")};
      edges.emplace_back(e, lineno);
    } else {
      throw ParseError("unknown record type '" + tag + "'", lineno);
    }
  }
  const std::size_t n = vertices.size();
  if (n > 0 && vertices.rbegin()->first != n - 1) {
    throw ParseError("vertex ids must be exactly 0.." + std::to_string(n - 1), 0);
  }
  std::vector<double> m(n), k(n);
  for (const auto& [id, mc] : vertices) {
    m[id] = mc.first;
    k[id] = mc.second;
  }
  std::vector<Edge> plain;
  plain.reserve(edges.size());
  for (const auto& [e, line] : edges) {
    if (e.u >= n || e.v >= n) throw ParseError("edge references undeclared vertex", line);
    plain.push_back(e);
  }
  try {
    return WeightedGraph(std::move(m), std::move(k), std::move(plain));
  } catch (const ArgumentError& err) {
    throw ParseError(err.what(), 0);
  }
}

inline void write_graph(std::ostream& out, const WeightedGraph& g) {
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    out << "V " << x << ' ' << format_real(g.measure(x)) << ' ' << format_real(g.killing(x))
        << '\n';
  }
  for (const auto& e : g.edges()) {
    out << "E " << e.u << ' ' << e.v << ' ' << format_real(e.weight) << '\n';
  }
}

}  // namespace wss
