#pragma once

// Path metrics, distances, cutoff functions and capacities.

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "wss/error.hpp"
#include "wss/families.hpp"
#include "wss/format.hpp"
#include "wss/graph.hpp"
#include "wss/series.hpp"

namespace wss {

/// Length sigma(e) per edge, indexed like WeightedGraph::edges().
struct EdgeLengths {
  std::vector<double> length;
};

/// sigma(x,y) = min(Deg(x)^{-1/2}, Deg(y)^{-1/2}) with the given degrees.
inline EdgeLengths degree_path_lengths(const WeightedGraph& g, std::span<const double> degrees) {
  if (degrees.size() != g.vertex_count()) throw ArgumentError("one degree per vertex expected");
  EdgeLengths s;
  s.length.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    s.length.push_back(std::min(1.0 / std::sqrt(degrees[e.u]), 1.0 / std::sqrt(degrees[e.v])));
  }
  return s;
}

inline EdgeLengths degree_path_lengths(const WeightedGraph& g) {
  std::vector<double> deg(g.vertex_count());
  for (Vertex x = 0; x < g.vertex_count(); ++x) deg[x] = weighted_degree(g, x);
  return degree_path_lengths(g, deg);
}

struct IntrinsicCheck {
  bool strongly_intrinsic = true;
  double max_ratio = 0.0;  // max_x sum_y b(x,y) sigma^2(x,y) / m(x)
  Vertex worst = 0;
};

inline IntrinsicCheck is_strongly_intrinsic(const WeightedGraph& g, const EdgeLengths& sigma) {
  if (sigma.length.size() != g.edge_count()) throw ArgumentError("one length per edge expected");
  IntrinsicCheck out;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) s += nb.weight * sigma.length[nb.edge] * sigma.length[nb.edge];
    const double ratio = s / g.measure(x);
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.worst = x;
    }
  }
  out.strongly_intrinsic = out.max_ratio <= 1.0 + 1e-12;
  return out;
}

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Dijkstra distances d(x) = min over sources s of offset(s) + d_sigma(s, x),
/// restricted to paths inside `mask` (all vertices when empty).
inline std::vector<double> shortest_paths(const WeightedGraph& g, const EdgeLengths& sigma,
                                          std::span<const std::pair<Vertex, double>> sources,
                                          const std::vector<bool>& mask = {}) {
  if (sigma.length.size() != g.edge_count()) throw ArgumentError("one length per edge expected");
  auto inside = [&](Vertex x) { return mask.empty() || mask[x]; };
  std::vector<double> dist(g.vertex_count(), kUnreachable);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (const auto& [s, off] : sources) {
    g.check_vertex(s);
    if (!inside(s) || !(off >= 0.0)) continue;
    if (off < dist[s]) {
      dist[s] = off;
      pq.emplace(off, s);
    }
  }
  while (!pq.empty()) {
    const auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    for (const auto& nb : g.neighbors(x)) {
      if (!inside(nb.vertex)) continue;
      const double nd = d + sigma.length[nb.edge];
      if (nd < dist[nb.vertex]) {
        dist[nb.vertex] = nd;
        pq.emplace(nd, nb.vertex);
      }
    }
  }
  return dist;
}

inline std::vector<double> shortest_paths(const WeightedGraph& g, const EdgeLengths& sigma, Vertex source) {
  const std::pair<Vertex, double> src[] = {{source, 0.0}};
  return shortest_paths(g, sigma, src);
}

/// eta_r(x) = min(1, ((2r - d_Y(x, x0)) / r)_+), d_Y the path metric inside Y.
inline VertexFunction cutoff_function(const WeightedGraph& g, const EdgeLengths& sigma,
                                      const std::vector<bool>& y, Vertex x0, double r) {
  g.check_vertex(x0);
  if (y.size() != g.vertex_count()) throw ArgumentError("Y mask must have one entry per vertex");
  if (!y[x0]) throw ArgumentError("x0 must lie in Y");
  if (!(r > 0.0)) throw ArgumentError("cutoff radius must be > 0");
  const std::pair<Vertex, double> src[] = {{x0, 0.0}};
  const auto d = shortest_paths(g, sigma, src, y);
  VertexFunction eta(g.vertex_count(), 0.0);
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (std::isfinite(d[x])) eta[x] = std::clamp((2.0 * r - d[x]) / r, 0.0, 1.0);
  }
  return eta;
}

struct EquilibriumPotential {
  VertexFunction e;
  double capacity = 0.0;  // squared form norm ||e||^2 + Q(e)
  std::string method;     // "none", "ldlt" or "cg"
};

inline constexpr std::size_t kDirectSolveLimit = 50'000;

/// Minimizer of ||u||^2 + Q(u) subject to u = 1 on K. Solved for w = 1 - e on
/// the complement, which keeps w accurate where e is close to 1; the capacity
/// is read off as the flux sum over K, a sum of nonnegative terms.
inline EquilibriumPotential equilibrium_potential(const WeightedGraph& g, const std::vector<bool>& k) {
  if (k.size() != g.vertex_count()) throw ArgumentError("K mask must have one entry per vertex");
  const std::size_t n = g.vertex_count();
  EquilibriumPotential out;
  out.e.assign(n, 0.0);
  std::vector<Eigen::Index> idx(n, -1);
  Eigen::Index free = 0;
  bool any_k = false;
  for (Vertex x = 0; x < n; ++x) {
    if (k[x]) any_k = true;
    else idx[x] = free++;
  }
  out.method = "none";
  if (!any_k) return out;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(free);
  if (free > 0) {
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs(free);
    for (Vertex x = 0; x < n; ++x) {
      if (k[x]) continue;
      const Eigen::Index i = idx[x];
      const double mc = g.measure(x) + g.killing(x);
      double diag = mc;
      for (const auto& nb : g.neighbors(x)) {
        diag += nb.weight;
        if (!k[nb.vertex]) trip.emplace_back(i, idx[nb.vertex], -nb.weight);
      }
      trip.emplace_back(i, i, diag);
      rhs[i] = mc;
    }
    Eigen::SparseMatrix<double> a(free, free);
    a.setFromTriplets(trip.begin(), trip.end());
    if (static_cast<std::size_t>(free) <= kDirectSolveLimit) {
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
      if (ldlt.info() != Eigen::Success) throw StructureError("equilibrium system factorization failed");
      w = ldlt.solve(rhs);
      out.method = "ldlt";
    } else {
      Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg(a);
      cg.setTolerance(1e-10);
      cg.setMaxIterations(std::max<Eigen::Index>(1000, 10 * free));
      w = cg.solve(rhs);
      if (cg.info() != Eigen::Success) throw StructureError("equilibrium CG did not converge");
      out.method = "cg";
    }
  }
  double cap = 0.0;
  for (Vertex x = 0; x < n; ++x) {
    if (!k[x]) {
      const double wx = w[idx[x]];
      if (!(wx >= -1e-9 && wx <= 1.0 + 1e-9)) {
        throw StructureError("equilibrium potential left [0,1] at vertex " + std::to_string(x));
      }
      out.e[x] = 1.0 - std::clamp(wx, 0.0, 1.0);
      continue;
    }
    out.e[x] = 1.0;
    cap += g.measure(x) + g.killing(x);
    for (const auto& nb : g.neighbors(x)) {
      if (!k[nb.vertex]) cap += nb.weight * std::clamp(w[idx[nb.vertex]], 0.0, 1.0);
    }
  }
  out.capacity = cap;
  return out;
}

inline EquilibriumPotential equilibrium_potential(const WeightedGraph& g, std::span<const Vertex> k) {
  std::vector<bool> mask(g.vertex_count(), false);
  for (Vertex x : k) {
    g.check_vertex(x);
    mask[x] = true;
  }
  return equilibrium_potential(g, mask);
}

// ---------------------------------------------------------------------------
// Capacity of the Cauchy boundary along a truncation sequence.

enum class CapacityClass { Zero, PositiveFinite, Infinite, Undecided };

inline const char* to_string(CapacityClass c) {
  switch (c) {
    case CapacityClass::Zero: return "zero";
    case CapacityClass::PositiveFinite: return "positive-finite";
    case CapacityClass::Infinite: return "infinite";
    case CapacityClass::Undecided: return "undecided";
  }
  return "?";
}

enum class RowStatus { Converged, Diverging, Unresolved };

inline const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Converged: return "converged";
    case RowStatus::Diverging: return "diverging";
    case RowStatus::Unresolved: return "unresolved";
  }
  return "?";
}

struct CapacityRow {
  int depth = 0;
  double epsilon = 0.0;     // U = {x : remaining sigma-length <= epsilon}
  double capacity = 0.0;    // cap(U) in the deepest truncation used
  int truncation = 0;       // depth of that truncation
  double trapped_mass = 0.0;  // m(U) inside the truncation
  RowStatus status = RowStatus::Unresolved;
};

struct CapacityEstimate {
  std::vector<CapacityRow> rows;
  CapacityClass classification = CapacityClass::Undecided;
  std::optional<double> extrapolated;
  std::string reason;
};

/// Radial reduction of a WSS profile: the chain with edge weights dB(r) and
/// sphere measures. Equilibrium potentials of unions of spheres are radial,
/// so capacities of such sets agree with the full graph.
inline Truncation radial_truncation(const RadialProfile& p, int depth) {
  Truncation t;
  t.graph = radial_chain(p, depth);
  t.depth = depth;
  t.roots = {0};
  for (int r = 0; r <= depth; ++r) {
    t.level.push_back(r);
    t.rail.push_back('r');
    t.degree.push_back(radial_degree(p, r));
  }
  const RadialReach reach = radial_boundary_reach(p);
  t.boundary = reach.finite.state;
  if (reach.finite.holds()) {
    const auto lengths = radial_tail_lengths(p, depth);
    if (lengths) t.boundary_sources.emplace_back(static_cast<Vertex>(depth), lengths->back());
  }
  return t;
}

inline constexpr int kMaxCapacityTruncation = 1 << 13;

namespace detail {

struct NeighborhoodCap {
  double epsilon, capacity, trapped;
};

inline NeighborhoodCap neighborhood_capacity(const Truncation& t, int depth) {
  const EdgeLengths sigma = degree_path_lengths(t.graph, t.degree);
  const auto rem = shortest_paths(t.graph, sigma, t.boundary_sources);
  double eps = kUnreachable;
  for (Vertex x = 0; x < t.graph.vertex_count(); ++x) {
    if (t.level[x] == depth && t.rail[x] != 'o') eps = std::min(eps, rem[x]);
  }
  if (!std::isfinite(eps)) throw StructureError("no vertex at the requested depth reaches the boundary");
  std::vector<bool> u(t.graph.vertex_count(), false);
  double trapped = 0.0;
  for (Vertex x = 0; x < t.graph.vertex_count(); ++x) {
    if (rem[x] <= eps * (1.0 + 1e-12)) {
      u[x] = true;
      trapped += t.graph.measure(x);
    }
  }
  return {eps, equilibrium_potential(t.graph, u).capacity, trapped};
}

}  // namespace detail

/// cap(U_eps) for the boundary neighborhoods at the given (strictly
/// increasing) depths. Each value is taken in a truncation deep enough that
/// doubling it changes the value by < 0.1%.
inline CapacityEstimate boundary_capacity_estimate(const Family& f, std::span<const int> depths) {
  if (depths.empty()) throw ArgumentError("at least one depth is needed");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 1) throw ArgumentError("depths must be >= 1");
    if (i > 0 && depths[i] <= depths[i - 1]) {
      throw ArgumentError("depths must be strictly increasing so that neighborhoods are nested");
    }
  }
  const bool radial = is_radial_family(f);
  const std::optional<RadialProfile> prof = radial ? std::optional(family_profile(f)) : std::nullopt;
  auto make = [&](int d) { return radial ? radial_truncation(*prof, d) : truncate(f, d); };

  CapacityEstimate est;
  const Truncation probe = make(depths.front());
  if (probe.boundary == State::Fails) {
    est.classification = CapacityClass::Zero;
    est.extrapolated = 0.0;
    est.reason = "Cauchy boundary is empty, cap = 0";
    return est;
  }
  if (probe.boundary == State::Inconclusive) {
    est.reason = "finiteness of the boundary distance is undecided";
    return est;
  }
  for (int d : depths) {
    CapacityRow row;
    row.depth = d;
    std::optional<detail::NeighborhoodCap> prev;
    int diverging_steps = 0;
    for (int t = 2 * d; t <= std::max(kMaxCapacityTruncation, 2 * d); t *= 2) {
      const detail::NeighborhoodCap cur = detail::neighborhood_capacity(make(t), d);
      row.epsilon = cur.epsilon;
      row.capacity = cur.capacity;
      row.trapped_mass = cur.trapped;
      row.truncation = t;
      if (prev) {
        if (std::abs(cur.capacity - prev->capacity) < 1e-3 * cur.capacity) {
          row.status = RowStatus::Converged;
          break;
        }
        // Growth that is carried by measure trapped in U.
        if (cur.trapped - prev->trapped >= 0.5 * (cur.capacity - prev->capacity) &&
            cur.trapped > prev->trapped * (1.0 + 1e-3)) {
          row.status = RowStatus::Diverging;
          if (++diverging_steps == 3) break;
        } else {
          diverging_steps = 0;
          row.status = RowStatus::Unresolved;
        }
      }
      prev = cur;
    }
    est.rows.push_back(row);
  }

  const auto& rows = est.rows;
  const bool all_conv = std::all_of(rows.begin(), rows.end(),
                                    [](const CapacityRow& r) { return r.status == RowStatus::Converged; });
  const bool all_div = std::all_of(rows.begin(), rows.end(),
                                   [](const CapacityRow& r) { return r.status == RowStatus::Diverging; });
  if (all_div) {
    double floor = kUnreachable;
    for (const auto& r : rows) floor = std::min(floor, r.trapped_mass);
    est.classification = CapacityClass::Infinite;
    est.reason = "cap(U) grows with the truncation at every depth, carried by trapped measure >= " +
                 format_real(floor, 6);
    return est;
  }
  if (!all_conv) {
    est.reason = "some neighborhood capacities did not stabilize in truncations up to depth " +
                 std::to_string(kMaxCapacityTruncation);
    return est;
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].capacity > rows[i - 1].capacity * (1.0 + 1e-9)) {
      est.reason = "capacities increase as the neighborhoods shrink";
      return est;
    }
  }
  const double last = rows.back().capacity;
  const bool stable = rows.size() >= 2 &&
                      std::abs(last - rows[rows.size() - 2].capacity) < 1e-2 * last;
  if (stable && last > 0.0) {
    est.classification = CapacityClass::PositiveFinite;
    est.extrapolated = last;
    est.reason = "successive values within 1%";
  } else {
    est.reason = "values still decreasing at the deepest neighborhood";
  }
  return est;
}

}  // namespace wss
