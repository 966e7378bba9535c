#pragma once

// Parameterized graph families: birth-death chains, spherically symmetric
// trees, anti-trees, and the composite examples built from chains (bilateral
// chains, pendant chains, chain plus infinite star, double ladder).
//
// Each family yields finite truncations (all layers 0..R with induced edges,
// no boundary condition) and, for the radially symmetric kinds, an exact
// RadialProfile with closed-form tails.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wss/error.hpp"
#include "wss/graph.hpp"
#include "wss/sequence_spec.hpp"
#include "wss/series.hpp"

namespace wss {

/// b(r) = b(r, r+1), m(r), optional killing c(r).
struct ChainParams {
  SeqSpec b = constant_sequence(1.0);
  SeqSpec m = constant_sequence(1.0);
  std::optional<SeqSpec> c;
};

/// Branching k(r) = number of children of each vertex in S_r; unit edge
/// weights; per-vertex measure m(r).
struct TreeParams {
  SeqSpec k = constant_sequence(2.0);
  SeqSpec m = constant_sequence(1.0);
};

/// Sphere sizes s(r), complete bipartite unit-weight edges between
/// consecutive spheres, per-vertex measure m(r).
struct AntiTreeParams {
  SeqSpec s = parse_sequence("linear");
  SeqSpec m = constant_sequence(1.0);
};

/// Chain on Z. The right half is indexed as a chain from 0; the left half by
/// distance from 0: left.b(j) = b(-j, -j-1) and left.m(j) = m(-j) for j >= 1.
struct BilateralParams {
  ChainParams right;
  ChainParams left;
};

/// Chain 0, 1, 2, ... with a pendant vertex x_k attached to every k.
struct PendantParams {
  ChainParams chain;
  SeqSpec b_vertical = constant_sequence(1.0);  // b(k, x_k)
  SeqSpec m_pendant = constant_sequence(1.0);   // m(x_k)
};

/// Pendant chain whose pendant vertices are also joined to a hub o.
struct StarParams {
  ChainParams chain;
  SeqSpec b_vertical = constant_sequence(1.0);  // b(k, x_k)
  SeqSpec m_leaf = constant_sequence(1.0);      // m(x_k)
  SeqSpec b_hub = parse_sequence("2^-r");       // b(o, x_k), summable
  double m_hub = 1.0;
};

/// Three parallel chains x, y, z with rungs x_k - y_k - z_k.
struct LadderParams {
  ChainParams x, y, z;
  SeqSpec b_xy = constant_sequence(1.0);
  SeqSpec b_yz = constant_sequence(1.0);
};

using FamilyParams = std::variant<ChainParams, TreeParams, AntiTreeParams, BilateralParams,
                                  PendantParams, StarParams, LadderParams>;

struct Family {
  std::string name;
  FamilyParams params;
};

inline const char* family_kind(const Family& f) {
  static const char* names[] = {"birth_death", "tree",  "anti_tree",    "bilateral",
                                "pendant",     "star",  "double_ladder"};
  return names[f.params.index()];
}

/// Radially symmetric about vertex 0 (chains, trees, anti-trees).
inline bool is_radial_family(const Family& f) { return f.params.index() <= 2; }

// ---------------------------------------------------------------------------
// Construction from names and key=value parameters

inline const std::map<std::string, std::pair<std::string, std::map<std::string, std::string>>>&
family_presets() {
  static const std::map<std::string, std::pair<std::string, std::map<std::string, std::string>>>
      presets = {
          {"geom_chain", {"birth_death", {{"b", "2^r"}, {"m", "2^-r"}}}},
          {"unit_chain", {"birth_death", {{"b", "1"}, {"m", "1"}}}},
          {"poly_chain", {"birth_death", {{"b", "(r+1)^2"}, {"m", "(r+1)^-3"}}}},
          {"antitree_linear", {"anti_tree", {{"s", "linear"}, {"m", "1"}}}},
          {"antitree_quadratic", {"anti_tree", {{"s", "quadratic"}, {"m", "1"}}}},
          {"antitree_geomass", {"anti_tree", {{"s", "2^r"}, {"m", "8^-r"}}}},
          {"binary_tree", {"tree", {{"k", "2"}, {"m", "1"}}}},
          {"bilateral_mixed",
           {"bilateral", {{"b", "2^r"}, {"m", "2^-r"}, {"b_left", "1"}, {"m_left", "1"}}}},
          {"bilateral_unit", {"bilateral", {{"b", "1"}, {"m", "1"}, {"b_left", "1"}, {"m_left", "1"}}}},
          {"pendant_geom",
           {"pendant", {{"b", "2^r"}, {"m", "2^-r"}, {"b_v", "2^-r"}, {"m_p", "1"}}}},
          {"pendant_poly",
           {"pendant", {{"b", "(r+1)^2"}, {"m", "(r+1)^-2"}, {"b_v", "1"}, {"m_p", "1"}}}},
          {"star_poly",
           {"star",
            {{"b", "(r+1)^2"}, {"m", "(r+1)^-2"}, {"b_v", "1"}, {"m_leaf", "1"}, {"b_hub", "2^-r"},
             {"m_hub", "1"}}}},
          {"ladder_poly",
           {"double_ladder",
            {{"b_x", "(r+1)^2"}, {"m_x", "(r+1)^-2"}, {"b_y", "1"}, {"m_y", "1"}, {"b_z", "1"},
             {"m_z", "1"}, {"b_xy", "1"}, {"b_yz", "1"}}}},
      };
  return presets;
}

/// The radially symmetric gallery used throughout the tests.
inline std::vector<std::string> gallery_names() {
  return {"geom_chain",         "unit_chain",       "poly_chain", "antitree_linear",
          "antitree_quadratic", "antitree_geomass", "binary_tree"};
}

inline std::vector<std::string> composite_names() {
  return {"bilateral_mixed", "bilateral_unit", "pendant_geom", "pendant_poly", "star_poly",
          "ladder_poly"};
}

/// `name` is a family kind or a preset; `params` override the defaults.
inline Family make_family(const std::string& name,
                          std::map<std::string, std::string> params = {}) {
  std::string kind = name;
  if (auto it = family_presets().find(name); it != family_presets().end()) {
    kind = it->second.first;
    for (const auto& [k, v] : it->second.second) params.emplace(k, v);
  }
  auto take = [&](const std::string& key, const std::string& fallback) {
    auto it = params.find(key);
    std::string v = it == params.end() ? fallback : it->second;
    if (it != params.end()) params.erase(it);
    return v;
  };
  auto seq = [&](const std::string& key, const std::string& fallback) {
    SeqSpec s = parse_sequence(take(key, fallback));
    s.validate(name + " parameter " + key);
    return s;
  };
  auto chain = [&](const std::string& bk, const std::string& mk, const std::string& ck) {
    ChainParams c;
    c.b = seq(bk, "1");
    c.m = seq(mk, "1");
    if (!ck.empty() && params.count(ck)) {
      const std::string v = take(ck, "");
      if (v != "0" && v != "zero") {
        SeqSpec s = parse_sequence(v);
        s.validate(name + " parameter " + ck);
        c.c = s;
      }
    }
    return c;
  };
  Family f;
  f.name = name;
  if (kind == "birth_death") {
    f.params = chain("b", "m", "c");
  } else if (kind == "tree") {
    f.params = TreeParams{seq("k", "2"), seq("m", "1")};
  } else if (kind == "anti_tree") {
    f.params = AntiTreeParams{seq("s", "linear"), seq("m", "1")};
  } else if (kind == "bilateral") {
    BilateralParams p;
    p.right = chain("b", "m", "");
    p.left = chain("b_left", "m_left", "");
    f.params = p;
  } else if (kind == "pendant") {
    PendantParams p;
    p.chain = chain("b", "m", "");
    p.b_vertical = seq("b_v", "1");
    p.m_pendant = seq("m_p", "1");
    f.params = p;
  } else if (kind == "star") {
    StarParams p;
    p.chain = chain("b", "m", "");
    p.b_vertical = seq("b_v", "1");
    p.m_leaf = seq("m_leaf", "1");
    p.b_hub = seq("b_hub", "2^-r");
    const SeqSpec mh = seq("m_hub", "1");
    if (!mh.constant()) throw ArgumentError("m_hub must be a constant");
    p.m_hub = mh(0);
    if (!growth::summable(Growth::of(p.b_hub.form))) {
      throw ArgumentError("star hub weights b(o, x_k) must be summable");
    }
    f.params = p;
  } else if (kind == "double_ladder") {
    LadderParams p;
    p.x = chain("b_x", "m_x", "");
    p.y = chain("b_y", "m_y", "");
    p.z = chain("b_z", "m_z", "");
    p.b_xy = seq("b_xy", "1");
    p.b_yz = seq("b_yz", "1");
    f.params = p;
  } else {
    throw ArgumentError("unknown family '" + name + "'");
  }
  if (!params.empty()) {
    throw ArgumentError("unknown parameter '" + params.begin()->first + "' for family " + name);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Profiles

inline RadialProfile chain_profile(const ChainParams& c) {
  long r0 = std::max(c.b.prefix_length(), c.m.prefix_length());
  if (c.c) r0 = std::max(r0, c.c->prefix_length());
  RadialProfile p;
  for (long r = 0; r < r0; ++r) {
    p.boundary.push_back(c.b(r));
    p.measure.push_back(c.m(r));
    p.killing.push_back(c.c ? (*c.c)(r) : 0.0);
    p.size.push_back(1.0);
  }
  p.boundary_tail = c.b.form;
  p.measure_tail = c.m.form;
  p.killing_tail = c.c ? TailModel(c.c->form) : TailModel(ZeroTail{});
  p.size_tail = ClosedForm{};
  p.validate();
  return p;
}

namespace detail {

inline double integral_value(double v, const char* what, long r) {
  const double k = std::round(v);
  if (std::abs(v - k) > 1e-9 * std::max(1.0, std::abs(v)) || k < 1.0) {
    throw ArgumentError(std::string(what) + " must be a positive integer, got " + format_real(v) +
                        " at r=" + std::to_string(r));
  }
  return k;
}

inline RadialProfile tree_profile(const TreeParams& t) {
  const long r0 = std::max(t.k.prefix_length(), t.m.prefix_length());
  RadialProfile p;
  double n = 1.0;  // |S_r|
  for (long r = 0; r < r0; ++r) {
    const double k = integral_value(t.k(r), "tree branching", r);
    p.boundary.push_back(n * k);
    p.measure.push_back(n * t.m(r));
    p.killing.push_back(0.0);
    p.size.push_back(n);
    n *= k;
  }
  if (t.k.constant()) {
    const double K = integral_value(t.k.form.scale, "tree branching", r0);
    ClosedForm sizes;
    sizes.scale = n * std::pow(K, -static_cast<double>(r0));
    sizes.rho = K;
    p.size_tail = sizes;
    p.boundary_tail = sizes.shifted(1);
    p.measure_tail = sizes * t.m.form;
  } else {
    p.size_tail = CustomTail{};
    p.boundary_tail = CustomTail{};
    p.measure_tail = CustomTail{};
  }
  p.validate();
  return p;
}

inline RadialProfile anti_tree_profile(const AntiTreeParams& a) {
  const long r0 = std::max(a.s.prefix_length(), a.m.prefix_length());
  RadialProfile p;
  for (long r = 0; r < r0; ++r) {
    const double s = integral_value(a.s(r), "anti-tree sphere size", r);
    p.boundary.push_back(s * integral_value(a.s(r + 1), "anti-tree sphere size", r + 1));
    p.measure.push_back(s * a.m(r));
    p.killing.push_back(0.0);
    p.size.push_back(s);
  }
  p.size_tail = a.s.form;
  p.boundary_tail = a.s.form * a.s.form.shifted(1);
  p.measure_tail = a.s.form * a.m.form;
  p.validate();
  return p;
}

}  // namespace detail

/// Exact profile about vertex 0 of a radially symmetric family.
inline RadialProfile family_profile(const Family& f) {
  if (const auto* c = std::get_if<ChainParams>(&f.params)) return chain_profile(*c);
  if (const auto* t = std::get_if<TreeParams>(&f.params)) return detail::tree_profile(*t);
  if (const auto* a = std::get_if<AntiTreeParams>(&f.params)) return detail::anti_tree_profile(*a);
  throw PreconditionError(std::string("family ") + f.name + " (" + family_kind(f) +
                          ") is not radially symmetric about a single root");
}

/// Birth-death chain with b(r) = dB(r), m(r) = m(S_r), c(r) = c(S_r) for
/// r <= depth: the radial quotient of a weakly spherically symmetric graph.
inline WeightedGraph radial_chain(const RadialProfile& p, int depth) {
  GraphBuilder gb;
  for (long r = 0; r <= depth; ++r) {
    gb.add_vertex(p.at(Sequence::Measure, r), p.at(Sequence::Killing, r));
  }
  for (long r = 0; r < depth; ++r) {
    gb.add_edge(static_cast<Vertex>(r), static_cast<Vertex>(r + 1), p.at(Sequence::Boundary, r));
  }
  return std::move(gb).build();
}

// ---------------------------------------------------------------------------
// Remaining radial length along a chain spine under the degree path metric

/// Remaining sigma-length L(k) = sum_{j>=k} sigma(j, j+1) along a chain whose
/// vertex k additionally carries the edges `extra` (weights at k), with
/// degrees taken in the infinite graph.
struct SpineLength {
  Verdict finite;                             // Holds iff the total length is finite
  std::optional<std::vector<double>> remaining;  // L(0..depth) when finite
};

inline SpineLength spine_length(const ChainParams& chain, const std::vector<SeqSpec>& extra,
                                long depth, std::optional<double> m0 = std::nullopt,
                                double extra0 = 0.0) {
  auto deg = [&](long k) {
    double s = chain.b(k) + (k > 0 ? chain.b(k - 1) : extra0);
    for (const auto& e : extra) s += e(k);
    if (chain.c) s += (*chain.c)(k);
    const double m = (k == 0 && m0) ? *m0 : chain.m(k);
    return s / m;
  };
  auto sigma = [&](long k) {
    return std::min(1.0 / std::sqrt(deg(k)), 1.0 / std::sqrt(deg(k + 1)));
  };
  Growth num = Growth::of(chain.b.form);
  for (const auto& e : extra) num = growth::add(num, Growth::of(e.form));
  if (chain.c) num = growth::add(num, Growth::of(chain.c->form));
  const Growth d = growth::multiply(num, *growth::reciprocal(Growth::of(chain.m.form)));
  const Growth s = *growth::power(d, -0.5);
  SpineLength out;
  out.finite = detail::by_class(s, "Deg(k)^{-1/2} along the chain");
  if (out.finite.holds()) out.remaining = suffix_sums(sigma, s, depth);
  return out;
}

// ---------------------------------------------------------------------------
// Truncations

struct Truncation {
  WeightedGraph graph;
  std::vector<Vertex> roots;
  std::vector<int> level;
  std::vector<char> rail;       // 'r' radial/chain, '-' left half, 'x' 'y' 'z' rails or pendants, 'o' hub
  std::vector<double> degree;   // weighted degree in the untruncated graph
  /// Vertices of the last layer together with their remaining sigma-length
  /// to the Cauchy boundary (empty when no boundary is reachable).
  std::vector<std::pair<Vertex, double>> boundary_sources;
  State boundary = State::Inconclusive;  // Holds: the family has a Cauchy boundary
  std::vector<Vertex> x1;                // canonical X_1 for composite families
  int depth = 0;

  std::string label(Vertex x) const {
    if (rail[x] == 'o') return "o";
    if (rail[x] == 'r') return std::to_string(level[x]);
    if (rail[x] == '-') return "-" + std::to_string(level[x]);
    return std::string(1, rail[x]) + std::to_string(level[x]);
  }
};

inline constexpr std::size_t kMaxTruncationVertices = 4'000'000;
inline constexpr std::size_t kMaxTruncationEdges = 20'000'000;

namespace detail {

class TruncationBuilder {
 public:
  Vertex vertex(double m, double c, int level, char rail) {
    if (gb_.vertex_count() >= kMaxTruncationVertices) {
      throw ArgumentError("truncation exceeds " + std::to_string(kMaxTruncationVertices) +
                          " vertices; use a smaller depth");
    }
    level_.push_back(level);
    rail_.push_back(rail);
    missing_.push_back(0.0);
    return gb_.add_vertex(m, c);
  }
  void edge(Vertex x, Vertex y, double w) {
    if (++edges_ > kMaxTruncationEdges) {
      throw ArgumentError("truncation exceeds " + std::to_string(kMaxTruncationEdges) + " edges");
    }
    gb_.add_edge(x, y, w);
  }
  /// Weight of edges from x to vertices outside the truncation.
  void missing(Vertex x, double w) { missing_[x] += w; }

  Truncation finish(int depth) && {
    Truncation t;
    t.graph = std::move(gb_).build();
    t.level = std::move(level_);
    t.rail = std::move(rail_);
    t.degree.resize(t.graph.vertex_count());
    for (Vertex x = 0; x < t.graph.vertex_count(); ++x) {
      t.degree[x] = (t.graph.row_sum(x) + missing_[x] + t.graph.killing(x)) / t.graph.measure(x);
    }
    t.roots = {0};
    t.depth = depth;
    return t;
  }

 private:
  GraphBuilder gb_;
  std::vector<int> level_;
  std::vector<char> rail_;
  std::vector<double> missing_;
  std::size_t edges_ = 0;
};

/// Adds chain vertices 0..R (ids returned) with their path edges.
inline std::vector<Vertex> add_chain(TruncationBuilder& tb, const ChainParams& c, int depth,
                                     char rail) {
  std::vector<Vertex> ids;
  for (int k = 0; k <= depth; ++k) ids.push_back(tb.vertex(c.m(k), c.c ? (*c.c)(k) : 0.0, k, rail));
  for (int k = 0; k < depth; ++k) tb.edge(ids[k], ids[k + 1], c.b(k));
  tb.missing(ids[depth], c.b(depth));
  return ids;
}

inline void set_boundary(Truncation& t, const std::vector<std::pair<Verdict, std::vector<std::pair<Vertex, double>>>>& spines) {
  bool any_finite = false, all_decided = true;
  for (const auto& [v, sources] : spines) {
    if (v.holds()) {
      any_finite = true;
      t.boundary_sources.insert(t.boundary_sources.end(), sources.begin(), sources.end());
    }
    if (!v.decided()) all_decided = false;
  }
  t.boundary = any_finite ? State::Holds : (all_decided ? State::Fails : State::Inconclusive);
}

inline double tail_sum(const SeqSpec& a, long from) {
  const Growth cls = Growth::of(a.form);
  if (from >= a.prefix_length()) {
    return suffix_sums([&](long r) { return a(r + from); }, cls, 0).front();
  }
  double s = 0.0;
  for (long r = from; r < a.prefix_length(); ++r) s += a(r);
  return s + suffix_sums([&](long r) { return a(r + a.prefix_length()); }, cls, 0).front();
}

}  // namespace detail

/// Layers 0..depth of the family with all induced edges.
inline Truncation truncate(const Family& f, int depth) {
  if (depth < 0) throw ArgumentError("truncation depth must be >= 0");
  detail::TruncationBuilder tb;
  Truncation t;
  std::vector<std::pair<Verdict, std::vector<std::pair<Vertex, double>>>> spines;

  if (const auto* c = std::get_if<ChainParams>(&f.params)) {
    const auto ids = detail::add_chain(tb, *c, depth, 'r');
    t = std::move(tb).finish(depth);
    const SpineLength sl = spine_length(*c, {}, depth);
    std::vector<std::pair<Vertex, double>> src;
    if (sl.remaining) src.emplace_back(ids[depth], sl.remaining->back());
    spines.emplace_back(sl.finite, src);
  } else if (std::holds_alternative<TreeParams>(f.params) ||
             std::holds_alternative<AntiTreeParams>(f.params)) {
    const bool tree = std::holds_alternative<TreeParams>(f.params);
    const SeqSpec& mv = tree ? std::get<TreeParams>(f.params).m : std::get<AntiTreeParams>(f.params).m;
    std::vector<Vertex> prev{tb.vertex(mv(0), 0.0, 0, 'r')};
    std::vector<Vertex> last = prev;
    for (int r = 1; r <= depth; ++r) {
      std::vector<Vertex> cur;
      if (tree) {
        const double k = detail::integral_value(std::get<TreeParams>(f.params).k(r - 1), "tree branching", r - 1);
        for (Vertex p : prev) {
          for (int i = 0; i < static_cast<int>(k); ++i) {
            const Vertex v = tb.vertex(mv(r), 0.0, r, 'r');
            tb.edge(p, v, 1.0);
            cur.push_back(v);
          }
        }
      } else {
        const double s = detail::integral_value(std::get<AntiTreeParams>(f.params).s(r), "anti-tree sphere size", r);
        for (int i = 0; i < static_cast<int>(s); ++i) cur.push_back(tb.vertex(mv(r), 0.0, r, 'r'));
        for (Vertex p : prev) {
          for (Vertex v : cur) tb.edge(p, v, 1.0);
        }
      }
      prev = std::move(cur);
    }
    last = prev;
    const double out = tree ? detail::integral_value(std::get<TreeParams>(f.params).k(depth), "tree branching", depth)
                            : detail::integral_value(std::get<AntiTreeParams>(f.params).s(depth + 1), "anti-tree sphere size", depth + 1);
    for (Vertex v : last) tb.missing(v, out);
    t = std::move(tb).finish(depth);
    const RadialProfile prof = family_profile(f);
    const RadialReach reach = radial_boundary_reach(prof);
    std::vector<std::pair<Vertex, double>> src;
    if (reach.length) {
      const double L = radial_tail_lengths(prof, depth)->back();
      for (Vertex v : last) src.emplace_back(v, L);
    }
    spines.emplace_back(reach.finite, src);
  } else if (const auto* bl = std::get_if<BilateralParams>(&f.params)) {
    const auto right = detail::add_chain(tb, bl->right, depth, 'r');
    std::vector<Vertex> left{right[0]};
    for (int j = 1; j <= depth; ++j) left.push_back(tb.vertex(bl->left.m(j), 0.0, j, '-'));
    for (int j = 0; j < depth; ++j) tb.edge(left[j], left[j + 1], bl->left.b(j));
    if (depth > 0) tb.missing(left[depth], bl->left.b(depth));
    else tb.missing(right[0], bl->left.b(0));
    t = std::move(tb).finish(depth);
    t.x1 = {right[0]};
    const SpineLength sr = spine_length(bl->right, {}, depth, std::nullopt, bl->left.b(0));
    const SpineLength sl = spine_length(bl->left, {}, depth, bl->right.m(0), bl->right.b(0));
    std::vector<std::pair<Vertex, double>> a, b;
    if (sr.remaining) a.emplace_back(right[depth], sr.remaining->back());
    if (sl.remaining) b.emplace_back(left[depth], sl.remaining->back());
    spines.emplace_back(sr.finite, a);
    spines.emplace_back(sl.finite, b);
  } else if (const auto* pd = std::get_if<PendantParams>(&f.params)) {
    const auto chain = detail::add_chain(tb, pd->chain, depth, 'r');
    for (int k = 0; k <= depth; ++k) {
      const Vertex x = tb.vertex(pd->m_pendant(k), 0.0, k, 'x');
      tb.edge(chain[k], x, pd->b_vertical(k));
    }
    t = std::move(tb).finish(depth);
    t.x1 = chain;
    const SpineLength sl = spine_length(pd->chain, {pd->b_vertical}, depth);
    std::vector<std::pair<Vertex, double>> src;
    if (sl.remaining) src.emplace_back(chain[depth], sl.remaining->back());
    spines.emplace_back(sl.finite, src);
  } else if (const auto* st = std::get_if<StarParams>(&f.params)) {
    const auto chain = detail::add_chain(tb, st->chain, depth, 'r');
    std::vector<Vertex> leaves;
    for (int k = 0; k <= depth; ++k) {
      leaves.push_back(tb.vertex(st->m_leaf(k), 0.0, k, 'x'));
      tb.edge(chain[k], leaves.back(), st->b_vertical(k));
    }
    const Vertex hub = tb.vertex(st->m_hub, 0.0, 0, 'o');
    for (int k = 0; k <= depth; ++k) tb.edge(hub, leaves[k], st->b_hub(k));
    tb.missing(hub, detail::tail_sum(st->b_hub, depth + 1));
    t = std::move(tb).finish(depth);
    t.x1 = chain;
    const SpineLength sl = spine_length(st->chain, {st->b_vertical}, depth);
    std::vector<std::pair<Vertex, double>> src;
    if (sl.remaining) src.emplace_back(chain[depth], sl.remaining->back());
    spines.emplace_back(sl.finite, src);
  } else if (const auto* ld = std::get_if<LadderParams>(&f.params)) {
    const auto xs = detail::add_chain(tb, ld->x, depth, 'x');
    const auto ys = detail::add_chain(tb, ld->y, depth, 'y');
    const auto zs = detail::add_chain(tb, ld->z, depth, 'z');
    for (int k = 0; k <= depth; ++k) {
      tb.edge(xs[k], ys[k], ld->b_xy(k));
      tb.edge(ys[k], zs[k], ld->b_yz(k));
    }
    t = std::move(tb).finish(depth);
    t.roots = {ys[0]};
    t.x1 = ys;
    const SpineLength sx = spine_length(ld->x, {ld->b_xy}, depth);
    const SpineLength sy = spine_length(ld->y, {ld->b_xy, ld->b_yz}, depth);
    const SpineLength sz = spine_length(ld->z, {ld->b_yz}, depth);
    const std::pair<const SpineLength*, Vertex> rails[] = {{&sx, xs[depth]}, {&sy, ys[depth]}, {&sz, zs[depth]}};
    for (const auto& [sp, v] : rails) {
      std::vector<std::pair<Vertex, double>> src;
      if (sp->remaining) src.emplace_back(v, sp->remaining->back());
      spines.emplace_back(sp->finite, src);
    }
  }
  detail::set_boundary(t, spines);
  return t;
}

// ---------------------------------------------------------------------------
// Ends of composite families

struct FamilyEnd {
  std::string name;
  RadialProfile profile;  // about the end's first vertex
};

namespace detail {

inline ChainParams shifted_chain(const ChainParams& c, long k) {
  ChainParams out;
  out.b = c.b.shifted(k);
  out.m = c.m.shifted(k);
  if (c.c) out.c = c.c->shifted(k);
  return out;
}

}  // namespace detail

/// Components of X \ X_1 that are infinite chains, with their exact profiles.
inline std::vector<FamilyEnd> family_ends(const Family& f) {
  std::vector<FamilyEnd> out;
  if (const auto* bl = std::get_if<BilateralParams>(&f.params)) {
    out.push_back({"positive half", chain_profile(detail::shifted_chain(bl->right, 1))});
    out.push_back({"negative half", chain_profile(detail::shifted_chain(bl->left, 1))});
  } else if (const auto* ld = std::get_if<LadderParams>(&f.params)) {
    out.push_back({"x rail", chain_profile(ld->x)});
    out.push_back({"z rail", chain_profile(ld->z)});
  }
  return out;
}

}  // namespace wss
