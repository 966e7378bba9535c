#pragma once

// Decompositions X = X_1 + X_2, boundary degrees, the stability and
// symmetric-ends verdicts, and numeric replays of the instability examples.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wss/capacity.hpp"
#include "wss/criteria.hpp"
#include "wss/error.hpp"
#include "wss/families.hpp"
#include "wss/graph.hpp"
#include "wss/harmonic.hpp"
#include "wss/series.hpp"
#include "wss/spheres.hpp"

namespace wss {

struct DecompositionEnd {
  std::vector<Vertex> vertices;          // sorted
  std::vector<Vertex> roots;             // vertices with a cross edge
  std::optional<RadialProfile> profile;  // when WSS about `roots`
};

struct Decomposition {
  std::vector<bool> in_x1;
  std::vector<Vertex> x1, x2;
  std::vector<Edge> b1, b2, b_boundary;
  std::vector<double> deg_boundary;  // (1/m(x)) sum_y b_boundary(x, y)
  std::vector<DecompositionEnd> ends;  // components of the graph induced on X_2
};

inline Decomposition decompose(const WeightedGraph& g, std::span<const Vertex> x1) {
  const std::size_t n = g.vertex_count();
  Decomposition d;
  d.in_x1.assign(n, false);
  for (Vertex x : x1) {
    g.check_vertex(x);
    d.in_x1[x] = true;
  }
  for (Vertex x = 0; x < n; ++x) (d.in_x1[x] ? d.x1 : d.x2).push_back(x);
  d.deg_boundary.assign(n, 0.0);
  for (const auto& e : g.edges()) {
    const bool a = d.in_x1[e.u], b = d.in_x1[e.v];
    if (a && b) d.b1.push_back(e);
    else if (!a && !b) d.b2.push_back(e);
    else {
      d.b_boundary.push_back(e);
      d.deg_boundary[e.u] += e.weight;
      d.deg_boundary[e.v] += e.weight;
    }
  }
  for (Vertex x = 0; x < n; ++x) d.deg_boundary[x] /= g.measure(x);

  std::vector<bool> mask(n);
  for (Vertex x = 0; x < n; ++x) mask[x] = !d.in_x1[x];
  const auto label = component_labels(g, mask);
  int count = 0;
  for (int l : label) count = std::max(count, l + 1);
  d.ends.resize(static_cast<std::size_t>(count));
  for (Vertex x = 0; x < n; ++x) {
    if (label[x] < 0) continue;
    auto& end = d.ends[static_cast<std::size_t>(label[x])];
    end.vertices.push_back(x);
    if (d.deg_boundary[x] > 0.0) end.roots.push_back(x);
  }
  for (auto& end : d.ends) {
    if (end.roots.empty()) continue;
    std::vector<std::size_t> local(n, SIZE_MAX);
    std::vector<double> m, c;
    for (Vertex x : end.vertices) {
      local[x] = m.size();
      m.push_back(g.measure(x));
      c.push_back(g.killing(x));
    }
    std::vector<Edge> edges;
    for (Vertex x : end.vertices) {
      for (const auto& nb : g.neighbors(x)) {
        if (local[nb.vertex] != SIZE_MAX && x < nb.vertex) {
          edges.push_back({local[x], local[nb.vertex], nb.weight});
        }
      }
    }
    const WeightedGraph sub(std::move(m), std::move(c), std::move(edges));
    std::vector<Vertex> roots;
    for (Vertex r : end.roots) roots.push_back(local[r]);
    const SphereDecomposition sd = sphere_decomposition(sub, roots);
    try {
      end.profile = profile_from_graph(sub, sd);
    } catch (const StructureError&) {
    }
  }
  return d;
}

/// Q restricted to the edges of one piece plus its killing term.
inline double piece_energy(const WeightedGraph& g, const Decomposition& d, const VertexFunction& f,
                           int piece) {
  detail::check_size(g, f, "function");
  const auto& edges = piece == 1 ? d.b1 : d.b2;
  double s = 0.0;
  for (const auto& e : edges) s += e.weight * (f[e.u] - f[e.v]) * (f[e.u] - f[e.v]);
  for (Vertex x : piece == 1 ? d.x1 : d.x2) s += g.killing(x) * f[x] * f[x];
  return s;
}

inline double boundary_energy(const WeightedGraph& g, const Decomposition& d, const VertexFunction& f) {
  detail::check_size(g, f, "function");
  double s = 0.0;
  for (const auto& e : d.b_boundary) s += e.weight * (f[e.u] - f[e.v]) * (f[e.u] - f[e.v]);
  return s;
}

inline double piece_norm_sq(const WeightedGraph& g, const Decomposition& d, const VertexFunction& f,
                            int piece) {
  double s = 0.0;
  for (Vertex x : piece == 1 ? d.x1 : d.x2) s += f[x] * f[x] * g.measure(x);
  return s;
}

struct BoundaryDegreeVerdict {
  State bounded = State::Inconclusive;
  double sup_estimate = 0.0;
  Vertex argmax = 0;
  std::string basis;
};

/// Max of Deg_boundary over a finite decomposition.
inline BoundaryDegreeVerdict boundary_degree_bounded(const Decomposition& d,
                                                     std::optional<double> bound = std::nullopt) {
  BoundaryDegreeVerdict v;
  for (Vertex x = 0; x < d.deg_boundary.size(); ++x) {
    if (d.deg_boundary[x] > v.sup_estimate) {
      v.sup_estimate = d.deg_boundary[x];
      v.argmax = x;
    }
  }
  if (bound) {
    v.bounded = v.sup_estimate <= *bound ? State::Holds : State::Fails;
    v.basis = "max over the finite graph against the bound " + format_real(*bound, 6);
  } else {
    v.bounded = State::Holds;
    v.basis = "finite graph";
  }
  return v;
}

namespace detail {

inline Growth ratio_class(const SeqSpec& num, const SeqSpec& den) {
  return growth::multiply(Growth::of(num.form), *growth::reciprocal(Growth::of(den.form)));
}

inline double prefix_sup(const std::function<double(long)>& f, long n = 257) {
  double s = 0.0;
  for (long r = 0; r < n; ++r) s = std::max(s, f(r));
  return s;
}

}  // namespace detail

/// Exact boundedness of Deg_boundary for a composite family with its
/// canonical X_1, decided on the closed-form classes.
inline BoundaryDegreeVerdict family_boundary_degree(const Family& f) {
  BoundaryDegreeVerdict v;
  struct Term {
    std::string what;
    Growth cls;
    std::function<double(long)> value;
  };
  std::vector<Term> terms;
  if (const auto* p = std::get_if<PendantParams>(&f.params)) {
    terms.push_back({"b(k,x_k)/m(k)", detail::ratio_class(p->b_vertical, p->chain.m),
                     [p](long r) { return p->b_vertical(r) / p->chain.m(r); }});
    terms.push_back({"b(k,x_k)/m(x_k)", detail::ratio_class(p->b_vertical, p->m_pendant),
                     [p](long r) { return p->b_vertical(r) / p->m_pendant(r); }});
  } else if (const auto* s = std::get_if<StarParams>(&f.params)) {
    terms.push_back({"b(k,x_k)/m(k)", detail::ratio_class(s->b_vertical, s->chain.m),
                     [s](long r) { return s->b_vertical(r) / s->chain.m(r); }});
    terms.push_back({"b(k,x_k)/m(x_k)", detail::ratio_class(s->b_vertical, s->m_leaf),
                     [s](long r) { return s->b_vertical(r) / s->m_leaf(r); }});
  } else if (const auto* l = std::get_if<LadderParams>(&f.params)) {
    terms.push_back({"b(x_k,y_k)/m(x_k)", detail::ratio_class(l->b_xy, l->x.m),
                     [l](long r) { return l->b_xy(r) / l->x.m(r); }});
    terms.push_back({"b(y_k,z_k)/m(z_k)", detail::ratio_class(l->b_yz, l->z.m),
                     [l](long r) { return l->b_yz(r) / l->z.m(r); }});
    terms.push_back({"(b(x_k,y_k)+b(y_k,z_k))/m(y_k)",
                     growth::add(detail::ratio_class(l->b_xy, l->y.m), detail::ratio_class(l->b_yz, l->y.m)),
                     [l](long r) { return (l->b_xy(r) + l->b_yz(r)) / l->y.m(r); }});
  } else if (const auto* b = std::get_if<BilateralParams>(&f.params)) {
    v.bounded = State::Holds;
    v.sup_estimate = std::max({(b->right.b(0) + b->left.b(0)) / b->right.m(0),
                               b->right.b(0) / b->right.m(1), b->left.b(0) / b->left.m(1)});
    v.basis = "X_1 = {0} is finite";
    return v;
  } else {
    throw PreconditionError("family " + f.name + " has no canonical decomposition");
  }
  v.bounded = State::Holds;
  for (const auto& t : terms) {
    v.sup_estimate = std::max(v.sup_estimate, detail::prefix_sup(t.value));
    if (!growth::bounded(t.cls)) {
      v.bounded = State::Fails;
      v.basis += (v.basis.empty() ? "" : "; ") + t.what + " ~ " + t.cls.describe() + " is unbounded";
    }
  }
  if (v.bounded == State::Holds) v.basis = "all boundary degree ratios have bounded classes";
  return v;
}

/// Stability: with Deg_boundary bounded, g is form unique iff
/// both pieces are.
inline Verdict stability_verdict(const BoundaryDegreeVerdict& deg, const Verdict& v1, const Verdict& v2) {
  Verdict v;
  if (deg.bounded != State::Holds) {
    v.state = State::Inconclusive;
    v.basis = "hypothesis unmet: Deg_boundary is not known to be bounded (" + deg.basis + ")";
    return v;
  }
  v.state = detail::and3(v1.state, v2.state);
  v.basis = std::string("Deg_boundary bounded; X_1 ") + to_string(v1.state) + ", X_2 " + to_string(v2.state);
  return v;
}

struct EndReport {
  std::string name;
  RadialProfile profile;
  Verdict total_mass, resistance, form_uniqueness;
  CapacityClass capacity = CapacityClass::Undecided;
};

struct EndsReport {
  std::vector<EndReport> ends;
  std::vector<std::string> unmet;  // failed hypotheses
  Verdict global;
};

namespace detail {

inline Verdict x1_form_uniqueness(const Family& f) {
  Verdict v;
  if (std::holds_alternative<BilateralParams>(f.params)) {
    v.state = State::Holds;
    v.basis = "X_1 is finite";
    return v;
  }
  const SeqSpec* m = nullptr;
  if (const auto* p = std::get_if<PendantParams>(&f.params)) m = &p->chain.m;
  if (const auto* s = std::get_if<StarParams>(&f.params)) m = &s->chain.m;
  if (const auto* l = std::get_if<LadderParams>(&f.params)) m = &l->y.m;
  if (m && growth::bounded_below(Growth::of(m->form))) {
    v.state = State::Holds;
    v.basis = "inf m > 0 on X_1";
  } else {
    v.basis = "X_1 neither finite nor with measure bounded below";
  }
  return v;
}

inline CapacityClass end_capacity(const RadialProfile& p) {
  const RadialReach reach = radial_boundary_reach(p);
  if (reach.finite.fails()) return CapacityClass::Zero;
  const Verdict fu = form_uniqueness_verdict(p);
  if (fu.fails()) return CapacityClass::PositiveFinite;
  // A boundary point with m(end) = inf has infinite capacity.
  if (reach.finite.holds() && series_verdict(p, SeriesKind::TotalMass).fails()) {
    return CapacityClass::Infinite;
  }
  return CapacityClass::Undecided;
}

}  // namespace detail

/// Q(D) != Q(N) iff some end has TotalMass and Resistance convergent, under
/// the hypotheses: X_1 form unique, Deg_boundary bounded, ends WSS.
inline EndsReport symmetric_ends_verdict(const Family& f,
                                         std::optional<Verdict> x1_certified = std::nullopt) {
  EndsReport rep;
  const Verdict x1 = x1_certified ? *x1_certified : detail::x1_form_uniqueness(f);
  if (!x1.holds()) rep.unmet.push_back("X_1 form uniqueness not established: " + x1.basis);
  const BoundaryDegreeVerdict deg = family_boundary_degree(f);
  if (deg.bounded != State::Holds) rep.unmet.push_back("Deg_boundary bounded: " + deg.basis);
  const auto ends = family_ends(f);
  if (ends.empty()) rep.unmet.push_back("X_2 is not a finite union of weakly spherically symmetric ends");
  for (const auto& e : ends) {
    EndReport er;
    er.name = e.name;
    er.profile = e.profile;
    er.total_mass = series_verdict(e.profile, SeriesKind::TotalMass);
    er.resistance = series_verdict(e.profile, SeriesKind::Resistance);
    er.form_uniqueness = form_uniqueness_verdict(e.profile);
    er.capacity = detail::end_capacity(e.profile);
    rep.ends.push_back(std::move(er));
  }
  if (!rep.unmet.empty()) {
    rep.global.state = State::Inconclusive;
    rep.global.basis = "hypothesis unmet: " + rep.unmet.front();
    return rep;
  }
  State s = State::Holds;
  std::string basis;
  for (const auto& er : rep.ends) {
    s = detail::and3(s, er.form_uniqueness.state);
    basis += (basis.empty() ? "" : "; ") + er.name + ": " + to_string(er.form_uniqueness.state);
  }
  rep.global.state = s;
  rep.global.basis = "form unique iff every end is; " + basis;
  return rep;
}

/// Stability verdict for a composite family with its canonical X_1; the X_2
/// piece is decided from its ends, finite components, or inf m > 0.
inline Verdict family_stability_verdict(const Family& f) {
  const BoundaryDegreeVerdict deg = family_boundary_degree(f);
  Verdict v1, v2;
  if (const auto* p = std::get_if<PendantParams>(&f.params)) {
    v1 = form_uniqueness_verdict(chain_profile(p->chain));
    v2.state = State::Holds;
    v2.basis = "X_2 has only finite components";
  } else if (const auto* s = std::get_if<StarParams>(&f.params)) {
    v1 = form_uniqueness_verdict(chain_profile(s->chain));
    if (growth::bounded_below(Growth::of(s->m_leaf.form))) {
      v2.state = State::Holds;
      v2.basis = "inf m > 0 on X_2";
    }
  } else {
    v1 = detail::x1_form_uniqueness(f);
    State st = State::Holds;
    for (const auto& e : family_ends(f)) st = detail::and3(st, form_uniqueness_verdict(e.profile).state);
    v2.state = st;
    v2.basis = "from the ends";
  }
  return stability_verdict(deg, v1, v2);
}

// ---------------------------------------------------------------------------
// Instability examples

struct InstabilityDepth {
  int depth = 0;
  int k0 = 0;                // start of the monotone pattern
  bool pattern = false;      // all arrows verified
  std::string pattern_note;  // first violated arrow, if any
  std::vector<double> layer_energy;  // designated edge energy per layer k
  double min_increment = 0.0;        // min over k0 <= k <= depth of layer_energy
  double threshold = 0.0;
  bool witness = false;
  double identity_error = 0.0;  // pendant example: energy identity, relative
  double residual = 0.0;        // max |(Delta + 1) u| at equation vertices
  double u0 = 0.0;
};

struct InstabilityReport {
  std::string example;
  std::vector<std::string> hypotheses;
  std::vector<InstabilityDepth> depths;
  Verdict verdict;  // form uniqueness of the whole graph
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError("hypothesis violated: " + what);
}

inline void require_nonunique_chain(const ChainParams& c, const std::string& name,
                                    std::vector<std::string>& hyp) {
  const RadialProfile p = chain_profile(c);
  require(series_verdict(p, SeriesKind::TotalMass).holds(), "m(" + name + ") < inf (TotalMass series)");
  require(series_verdict(p, SeriesKind::Resistance).holds(),
          "sum 1/b on " + name + " < inf (Resistance series)");
  hyp.push_back("m(" + name + ") < inf and sum 1/b < inf on " + name);
}

}  // namespace detail

/// Replays the instability argument for the pendant, star or double ladder
/// family: solves (Delta + 1)u = 0 on depth-R truncations, checks the arrow
/// pattern and the per-layer energy on the designated edges.
inline InstabilityReport instability_example_analyzer(const Family& f, std::span<const int> depths,
                                                      double threshold_factor = 1e-6) {
  InstabilityReport rep;
  const double alpha = 1.0;
  if (const auto* p = std::get_if<PendantParams>(&f.params)) {
    rep.example = "pendant";
    detail::require_nonunique_chain(p->chain, "X_1", rep.hypotheses);
    const Growth bv = Growth::of(p->b_vertical.form), mp = Growth::of(p->m_pendant.form);
    const auto term = growth::multiply(growth::multiply(bv, *growth::power(mp, 2.0)),
                                       *growth::power(growth::add(bv, mp), -2.0));
    detail::require(!growth::summable(term),
                    "sum b(x_k,k) m(x_k)^2 / (b(x_k,k) + m(x_k))^2 = inf (terms ~ " + term.describe() + ")");
    rep.hypotheses.push_back("sum b(x_k,k) m(x_k)^2/(b(x_k,k)+m(x_k))^2 = inf");
  } else if (const auto* s = std::get_if<StarParams>(&f.params)) {
    rep.example = "star";
    detail::require_nonunique_chain(s->chain, "X_1", rep.hypotheses);
    detail::require(growth::bounded_below(Growth::of(s->m_leaf.form)), "inf m(x_k) > 0");
    detail::require(!growth::summable(Growth::of(s->b_vertical.form)), "sum b(k,x_k) = inf");
    detail::require(growth::summable(Growth::of(s->b_hub.form)), "sum b(o,x_k) < inf");
    rep.hypotheses.push_back("inf m(x_k) > 0, sum b(k,x_k) = inf, sum b(o,x_k) < inf");
  } else if (const auto* l = std::get_if<LadderParams>(&f.params)) {
    rep.example = "double_ladder";
    detail::require_nonunique_chain(l->x, "x rail", rep.hypotheses);
    detail::require(growth::bounded_below(Growth::of(l->y.m.form)), "inf m(y_k) > 0");
    detail::require(growth::bounded_below(Growth::of(l->z.m.form)), "inf m(z_k) > 0");
    detail::require(!growth::summable(Growth::of(l->b_xy.form)), "sum b(x_k,y_k) = inf");
    rep.hypotheses.push_back("inf m(y_k) > 0, inf m(z_k) > 0, sum b(x_k,y_k) = inf");
  } else {
    throw PreconditionError("instability analyzer needs a pendant, star or double_ladder family");
  }

  bool all = true;
  for (int depth : depths) {
    if (depth < 2) throw ArgumentError("instability depths must be >= 2");
    const Truncation t = truncate(f, depth);
    const std::size_t n = t.graph.vertex_count();
    // Ids per rail and level.
    std::vector<Vertex> chain(depth + 1), side(depth + 1), third(depth + 1);
    Vertex hub = 0;
    for (Vertex x = 0; x < n; ++x) {
      const auto k = static_cast<std::size_t>(t.level[x]);
      switch (t.rail[x]) {
        case 'r': chain[k] = x; break;
        case 'x': (rep.example == "double_ladder" ? chain : side)[k] = x; break;
        case 'y': side[k] = x; break;
        case 'z': third[k] = x; break;
        case 'o': hub = x; break;
        default: break;
      }
    }
    // Growing rail: the chain (pendant, star) or the x rail (ladder); its
    // last vertex carries no equation.
    const std::vector<Vertex> frontier{chain[depth]};
    const Vertex anchor = t.roots.front();
    const VertexFunction u = truncated_dirichlet_solve(t.graph, alpha, anchor, 1.0, frontier);
    InstabilityDepth d;
    d.depth = depth;
    d.u0 = u[anchor];
    std::vector<Vertex> eq;
    for (Vertex x = 0; x < n; ++x) {
      if (x != chain[depth]) eq.push_back(x);
    }
    d.residual = harmonic_residual(t.graph, u, alpha, eq);

    auto arrow = [&](Vertex lo, Vertex hi, const std::string& what) {
      if (!(u[lo] < u[hi]) && d.pattern_note.empty()) d.pattern_note = what + " violated";
    };
    // k0: first index from which the growing rail increases.
    d.k0 = depth - 1;
    while (d.k0 > 0 && u[chain[d.k0 - 1]] < u[chain[d.k0]]) --d.k0;
    for (int k = d.k0; k < depth; ++k) arrow(chain[k], chain[k + 1], "rail increase at k=" + std::to_string(k));
    const Vertex* left = nullptr;  // endpoint of the designated edge off the rail
    if (rep.example == "pendant") {
      for (int k = 0; k <= depth; ++k) arrow(side[k], chain[k], "x_k -> k at k=" + std::to_string(k));
      left = side.data();
    } else if (rep.example == "star") {
      for (int k = 0; k <= depth; ++k) arrow(side[k], chain[k], "x_k -> k at k=" + std::to_string(k));
      left = side.data();
    } else {
      for (int k = 0; k <= depth; ++k) {
        arrow(third[k], side[k], "z_k -> y_k at k=" + std::to_string(k));
        arrow(side[k], chain[k], "y_k -> x_k at k=" + std::to_string(k));
      }
      left = side.data();
    }
    d.pattern = d.pattern_note.empty();
    (void)hub;

    d.threshold = threshold_factor * d.u0 * d.u0;
    d.min_increment = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= depth; ++k) {
      const double b = t.graph.weight(chain[k], left[k]);
      const double diff = u[chain[k]] - u[left[k]];
      d.layer_energy.push_back(b * diff * diff);
      if (k >= d.k0) d.min_increment = std::min(d.min_increment, d.layer_energy.back());
    }
    if (rep.example == "pendant") {
      const auto* p = std::get_if<PendantParams>(&f.params);
      for (int k = 0; k <= depth; ++k) {
        const double b = p->b_vertical(k), m = p->m_pendant(k);
        const double expect = b * m * m / ((b + m) * (b + m)) * u[chain[k]] * u[chain[k]];
        d.identity_error = std::max(d.identity_error, std::abs(d.layer_energy[k] - expect) / expect);
      }
    }
    d.witness = d.min_increment >= d.threshold;
    all = all && d.pattern && d.witness;
    rep.depths.push_back(std::move(d));
  }
  if (all && !rep.depths.empty()) {
    rep.verdict.state = State::Holds;
    rep.verdict.basis = "positive 1-harmonic functions increase along the rail and every layer adds "
                        "at least a fixed energy on the designated edges, so they have infinite energy";
  } else {
    rep.verdict.basis = "pattern or divergence witness not reproduced";
  }
  return rep;
}

}  // namespace wss
