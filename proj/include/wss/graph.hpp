#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "wss/error.hpp"

namespace wss {

using Vertex = std::size_t;

/// Real-valued function on the vertex set, indexed by vertex id.
using VertexFunction = std::vector<double>;

/// Undirected edge with canonical orientation u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 0.0;
};

struct Neighbor {
  Vertex vertex = 0;
  double weight = 0.0;
  std::size_t edge = 0;  // index into WeightedGraph::edges()
};

/// Finite graph (b, c) over (X, m).
///
/// Edge weights are stored once per unordered pair; the adjacency view is a
/// CSR structure with neighbors sorted by id. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates m > 0, c >= 0, b > 0, no loops, finite values. Pairs listed
  /// more than once (in either orientation) must carry the same weight and are
  /// merged.
  WeightedGraph(std::vector<double> measure, std::vector<double> killing, std::vector<Edge> edges)
      : measure_(std::move(measure)), killing_(std::move(killing)) {
    if (measure_.size() != killing_.size()) {
      throw ArgumentError("measure and killing arrays differ in length");
    }
    for (std::size_t x = 0; x < measure_.size(); ++x) {
      if (!(measure_[x] > 0.0) || !std::isfinite(measure_[x])) {
        throw ArgumentError("vertex " + std::to_string(x) + ": measure must be finite and > 0");
      }
      if (!(killing_[x] >= 0.0) || !std::isfinite(killing_[x])) {
        throw ArgumentError("vertex " + std::to_string(x) + ": killing must be finite and >= 0");
      }
    }
    const std::size_t n = measure_.size();
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references a missing vertex");
      }
      if (e.u == e.v) throw ArgumentError("self-loop at vertex " + std::to_string(e.u));
      if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
        throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            "): weight must be finite and > 0");
      }
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (const auto& e : edges) {
      if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
        if (edges_.back().weight != e.weight) {
          throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              ") given with conflicting weights");
        }
        continue;
      }
      edges_.push_back(e);
    }

    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      adjacency_[fill[e.u]++] = {e.v, e.weight, i};
      adjacency_[fill[e.v]++] = {e.u, e.weight, i};
    }
    for (std::size_t x = 0; x < n; ++x) {
      std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[x]),
                adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[x + 1]),
                [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    }
  }

  std::size_t vertex_count() const noexcept { return measure_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(Vertex x) const {
    check_vertex(x);
    return {adjacency_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
  }

  double measure(Vertex x) const { check_vertex(x); return measure_[x]; }
  double killing(Vertex x) const { check_vertex(x); return killing_[x]; }
  const std::vector<double>& measures() const noexcept { return measure_; }
  const std::vector<double>& killings() const noexcept { return killing_; }

  /// b(x, y); zero when x and y are not neighbors.
  double weight(Vertex x, Vertex y) const {
    auto nb = neighbors(x);
    check_vertex(y);
    auto it = std::lower_bound(nb.begin(), nb.end(), y,
                               [](const Neighbor& a, Vertex v) { return a.vertex < v; });
    return it != nb.end() && it->vertex == y ? it->weight : 0.0;
  }

  /// Sum over y of b(x, y).
  double row_sum(Vertex x) const {
    double s = 0.0;
    for (const auto& nb : neighbors(x)) s += nb.weight;
    return s;
  }

  void check_vertex(Vertex x) const {
    if (x >= measure_.size()) {
      throw ArgumentError("vertex " + std::to_string(x) + " out of range (graph has " +
                          std::to_string(measure_.size()) + " vertices)");
    }
  }

 private:
  std::vector<double> measure_;
  std::vector<double> killing_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Incremental construction helper used by the family generators.
class GraphBuilder {
 public:
  Vertex add_vertex(double measure, double killing = 0.0) {
    measure_.push_back(measure);
    killing_.push_back(killing);
    return measure_.size() - 1;
  }
  void add_edge(Vertex x, Vertex y, double weight) { edges_.push_back({x, y, weight}); }
  std::size_t vertex_count() const noexcept { return measure_.size(); }

  WeightedGraph build() && {
    return WeightedGraph(std::move(measure_), std::move(killing_), std::move(edges_));
  }

 private:
  std::vector<double> measure_;
  std::vector<double> killing_;
  std::vector<Edge> edges_;
};

namespace detail {
inline void check_size(const WeightedGraph& g, const VertexFunction& f, const char* name) {
  if (f.size() != g.vertex_count()) {
    throw ArgumentError(std::string(name) + " has " + std::to_string(f.size()) +
                        " values, graph has " + std::to_string(g.vertex_count()) + " vertices");
  }
}
}  // namespace detail

/// Formal Laplacian at a single vertex:
/// (1/m(x)) [ sum_y b(x,y)(f(x) - f(y)) + c(x) f(x) ].
inline double apply_laplacian(const WeightedGraph& g, const VertexFunction& f, Vertex x) {
  detail::check_size(g, f, "function");
  double s = g.killing(x) * f[x];
  for (const auto& nb : g.neighbors(x)) s += nb.weight * (f[x] - f[nb.vertex]);
  return s / g.measure(x);
}

inline VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& f) {
  detail::check_size(g, f, "function");
  VertexFunction out(g.vertex_count());
  for (Vertex x = 0; x < g.vertex_count(); ++x) out[x] = apply_laplacian(g, f, x);
  return out;
}

/// Energy form Q(f, h); each undirected edge contributes once.
inline double energy(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  detail::check_size(g, f, "function");
  detail::check_size(g, h, "function");
  double s = 0.0;
  for (const auto& e : g.edges()) s += e.weight * (f[e.u] - f[e.v]) * (h[e.u] - h[e.v]);
  for (Vertex x = 0; x < g.vertex_count(); ++x) s += g.killings()[x] * f[x] * h[x];
  return s;
}

inline double energy(const WeightedGraph& g, const VertexFunction& f) {
  detail::check_size(g, f, "function");
  double s = 0.0;
  for (const auto& e : g.edges()) {
    const double d = f[e.u] - f[e.v];
    s += e.weight * d * d;
  }
  for (Vertex x = 0; x < g.vertex_count(); ++x) s += g.killings()[x] * f[x] * f[x];
  return s;
}

/// <f, h> in l^2(X, m).
inline double inner_product(const WeightedGraph& g, const VertexFunction& f,
                            const VertexFunction& h) {
  detail::check_size(g, f, "function");
  detail::check_size(g, h, "function");
  double s = 0.0;
  for (Vertex x = 0; x < g.vertex_count(); ++x) s += f[x] * h[x] * g.measures()[x];
  return s;
}

/// ||f||_p in l^p(X, m) for finite p, sup norm for p = infinity.
inline double lp_norm(const WeightedGraph& g, const VertexFunction& f, double p) {
  detail::check_size(g, f, "function");
  if (std::isinf(p)) {
    double s = 0.0;
    for (double v : f) s = std::max(s, std::abs(v));
    return s;
  }
  if (!(p >= 1.0)) throw ArgumentError("lp_norm needs p >= 1");
  double s = 0.0;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    s += std::pow(std::abs(f[x]), p) * g.measures()[x];
  }
  return std::pow(s, 1.0 / p);
}

/// ||f||^2 + Q(f).
inline double form_norm_sq(const WeightedGraph& g, const VertexFunction& f) {
  return inner_product(g, f, f) + energy(g, f);
}

/// Deg(x) = (sum_y b(x,y) + c(x)) / m(x).
inline double weighted_degree(const WeightedGraph& g, Vertex x) {
  return (g.row_sum(x) + g.killing(x)) / g.measure(x);
}

/// Connected-component label per vertex (labels 0..k-1 in order of smallest vertex).
/// Vertices with `mask[x] == false` get label -1 and are not traversed.
inline std::vector<int> component_labels(const WeightedGraph& g, const std::vector<bool>& mask = {}) {
  const std::size_t n = g.vertex_count();
  auto inside = [&](Vertex x) { return mask.empty() || mask[x]; };
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (!inside(s) || label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(x)) {
        if (inside(nb.vertex) && label[nb.vertex] < 0) {
          label[nb.vertex] = next;
          stack.push_back(nb.vertex);
        }
      }
    }
    ++next;
  }
  return label;
}

inline bool is_connected(const WeightedGraph& g) {
  auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

}  // namespace wss
