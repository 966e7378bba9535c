#pragma once

// Spherically symmetric alpha-harmonic functions: the radial recurrence, a
// direct linear-algebra oracle on finite truncations, and ell^p / energy
// membership verdicts.

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "wss/error.hpp"
#include "wss/graph.hpp"
#include "wss/series.hpp"
#include "wss/spheres.hpp"

namespace wss {

struct HarmonicSolution {
  double alpha = 0.0;
  std::vector<double> u;           // u(0..R)
  std::vector<double> increments;  // u(r+1) - u(r), r < R
  std::vector<double> partial_l1;  // sum_{k<=r} u(k) m(S_k)
  std::vector<double> partial_l2;  // sum_{k<=r} u(k)^2 m(S_k)
  // sum_{k<r} dB(k) (u(k+1) - u(k))^2 + sum_{k<=r} c(S_k) u(k)^2
  std::vector<double> partial_energy;
};

/// Solves u(r+1) - u(r) = (1/dB(r)) sum_{k<=r} (c(S_k) + alpha m(S_k)) u(k)
/// for r < depth, keeping the right-hand side as a running sum.
inline HarmonicSolution solve_symmetric_harmonic(const RadialProfile& p, double alpha, double u0,
                                                 int depth) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ArgumentError("alpha must be finite and >= 0");
  if (depth < 0) throw ArgumentError("depth must be >= 0");
  HarmonicSolution s;
  s.alpha = alpha;
  s.u.reserve(static_cast<std::size_t>(depth) + 1);
  s.u.push_back(u0);
  double flux = 0.0, l1 = 0.0, l2 = 0.0, en = 0.0;
  for (long r = 0; r <= depth; ++r) {
    const double m = p.at(Sequence::Measure, r);
    const double c = p.at(Sequence::Killing, r);
    const double ur = s.u.back();
    l1 += ur * m;
    l2 += ur * ur * m;
    en += c * ur * ur;
    s.partial_l1.push_back(l1);
    s.partial_l2.push_back(l2);
    s.partial_energy.push_back(en);
    if (r == depth) break;
    const double b = p.at(Sequence::Boundary, r);
    if (!(b > 0.0)) {
      throw StructureError("edge boundary vanishes at radius " + std::to_string(r));
    }
    flux += (c + alpha * m) * ur;
    const double inc = flux / b;
    s.increments.push_back(inc);
    s.u.push_back(ur + inc);
    en += b * inc * inc;
  }
  return s;
}

/// Solves (Delta + alpha) u = 0 at every vertex outside `frontier`, with all
/// frontier vertices tied to one common unknown value and u(anchor) = value.
/// Missing outward neighbors of the frontier are simply absent.
inline VertexFunction truncated_dirichlet_solve(const WeightedGraph& g, double alpha, Vertex anchor,
                                                double value, std::span<const Vertex> frontier) {
  g.check_vertex(anchor);
  if (frontier.empty()) throw ArgumentError("frontier must be nonempty");
  const std::size_t n = g.vertex_count();
  std::vector<bool> on_frontier(n, false);
  for (Vertex f : frontier) {
    g.check_vertex(f);
    on_frontier[f] = true;
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n + 2 * g.edge_count() + 2);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  // Rows: one per non-frontier vertex, one per frontier vertex except the
  // first (tie to the first), and the anchor row in the first frontier slot.
  const Vertex f0 = frontier.front();
  for (Vertex x = 0; x < n; ++x) {
    const auto row = static_cast<Eigen::Index>(x);
    if (on_frontier[x]) {
      if (x == f0) {
        trip.emplace_back(row, static_cast<Eigen::Index>(anchor), 1.0);
        rhs[row] = value;
      } else {
        trip.emplace_back(row, row, 1.0);
        trip.emplace_back(row, static_cast<Eigen::Index>(f0), -1.0);
      }
      continue;
    }
    double diag = g.killing(x) + alpha * g.measure(x);
    for (const auto& nb : g.neighbors(x)) {
      diag += nb.weight;
      trip.emplace_back(row, static_cast<Eigen::Index>(nb.vertex), -nb.weight);
    }
    trip.emplace_back(row, row, diag);
  }
  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw StructureError("truncated system is singular: " + lu.lastErrorMessage());
  }
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw StructureError("truncated solve failed");
  return VertexFunction(sol.data(), sol.data() + sol.size());
}

/// Frontier = the outermost sphere about `anchor`.
inline VertexFunction truncated_dirichlet_solve(const WeightedGraph& g, double alpha, Vertex anchor,
                                                double value) {
  const SphereDecomposition dec = sphere_decomposition(g, {anchor});
  if (dec.max_radius() == 0) {
    return VertexFunction(g.vertex_count(), value);
  }
  return truncated_dirichlet_solve(g, alpha, anchor, value, dec.spheres.back());
}

/// max |(Delta + alpha) u(x)| over `vertices` (all vertices when empty).
inline double harmonic_residual(const WeightedGraph& g, const VertexFunction& u, double alpha,
                                std::span<const Vertex> vertices = {}) {
  detail::check_size(g, u, "function");
  double worst = 0.0;
  auto at = [&](Vertex x) {
    worst = std::max(worst, std::abs(apply_laplacian(g, u, x) + alpha * u[x]));
  };
  if (vertices.empty()) {
    for (Vertex x = 0; x < g.vertex_count(); ++x) at(x);
  } else {
    for (Vertex x : vertices) at(x);
  }
  return worst;
}

struct MembershipReport {
  Verdict bounded;        // u in ell^infinity
  Verdict finite_energy;  // u in the domain of the energy form
  Verdict l1;
  Verdict l2;
};

/// Membership of the positive, increasing solution `sol` built from `p`.
inline MembershipReport membership_report(const RadialProfile& p, const HarmonicSolution& sol) {
  MembershipReport rep;
  const detail::TailFacts t = detail::tail_facts(p);
  const bool c_zero = p.has_zero_killing();
  const auto set = [](Verdict& v, State s, std::string basis) {
    v.state = s;
    v.basis = std::move(basis);
  };
  if (sol.alpha == 0.0 && c_zero) {
    // u is constant.
    set(rep.bounded, State::Holds, "u is constant");
    set(rep.finite_energy, State::Holds, "u is constant");
    const Verdict tot = series_verdict(p, SeriesKind::TotalMass);
    for (Verdict* v : {&rep.l1, &rep.l2}) set(*v, tot.state, "constant u: ell^p iff m(X) < inf");
  } else if (sol.alpha == 0.0) {
    for (Verdict* v : {&rep.bounded, &rep.finite_energy, &rep.l1, &rep.l2}) {
      set(*v, State::Inconclusive, "alpha = 0 with killing is not covered");
    }
  } else {
    rep.bounded = series_verdict(p, SeriesKind::BoundedHarmonic);
    if (t.C == std::optional<bool>(false)) {
      set(rep.finite_energy, State::Fails, "c(X) = inf");
    } else if (t.C == std::optional<bool>(true)) {
      rep.finite_energy = series_verdict(p, SeriesKind::EnergyWeight);
      rep.finite_energy.basis = "c(X) < inf; EnergyWeight series: " + rep.finite_energy.basis;
    } else {
      set(rep.finite_energy, State::Inconclusive, "c(X) undecided");
    }
    const bool m_fails = t.M == std::optional<bool>(false);
    const bool m_holds = t.M == std::optional<bool>(true);
    if (m_fails) {
      set(rep.l1, State::Fails, "u increasing with u >= u(0) > 0 and m(X) = inf");
      set(rep.l2, State::Fails, "u increasing with u >= u(0) > 0 and m(X) = inf");
    } else if (m_holds && rep.bounded.holds()) {
      set(rep.l1, State::Holds, "u bounded and m(X) < inf");
      set(rep.l2, State::Holds, "u bounded and m(X) < inf");
    } else if (m_holds && series_verdict(p, SeriesKind::FellerTail).fails()) {
      // dB(r)(u(r+1) - u(r)) >= alpha u(0) m(S_0) gives sum u m >= C sum m(B_r^c)/dB(r).
      set(rep.l1, State::Fails, "sum u m dominates the divergent FellerTail series");
      set(rep.l2, State::Fails, "not in ell^1 and m(X) < inf");
    } else {
      set(rep.l1, State::Inconclusive, "growth of unbounded u not decided");
      set(rep.l2, State::Inconclusive, "growth of unbounded u not decided");
    }
  }
  rep.l1.partial_sums = sol.partial_l1;
  rep.l2.partial_sums = sol.partial_l2;
  if (rep.finite_energy.partial_sums.empty()) rep.finite_energy.partial_sums = sol.partial_energy;
  return rep;
}

struct SandwichRow {
  double lower;   // ((c + alpha m)(B_r))^2 / dB(r) * u(0)^2
  double middle;  // dB(r) (u(r+1) - u(r))^2
  double upper;   // ((c + alpha m)(B_r))^2 / dB(r) * u(r)^2
};

inline std::vector<SandwichRow> energy_sandwich(const RadialProfile& p, const HarmonicSolution& sol) {
  std::vector<SandwichRow> rows;
  double a = 0.0;
  for (std::size_t r = 0; r < sol.increments.size(); ++r) {
    const long lr = static_cast<long>(r);
    a += p.at(Sequence::Killing, lr) + sol.alpha * p.at(Sequence::Measure, lr);
    const double b = p.at(Sequence::Boundary, lr);
    const double w = a * a / b;
    rows.push_back({w * sol.u[0] * sol.u[0], b * sol.increments[r] * sol.increments[r],
                    w * sol.u[r] * sol.u[r]});
  }
  return rows;
}

}  // namespace wss
