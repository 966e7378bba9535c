// wssfu: command-line front end.
//
// Exit codes: 0 decided / success, 1 consistency violations (check),
// 2 input error, 3 inconclusive verdicts present.

#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wss/capacity.hpp"
#include "wss/criteria.hpp"
#include "wss/families.hpp"
#include "wss/graph_io.hpp"
#include "wss/harmonic.hpp"
#include "wss/profile_io.hpp"
#include "wss/stability.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace wss;

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kInputError = 2;
constexpr int kInconclusive = 3;

struct Source {
  std::string profile_file;
  std::string graph_file;
  std::string family;
  std::vector<std::string> params;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, std::string> out;
  for (const auto& item : raw) {
    for (const auto& part : detail::split(item, ';')) {
      const std::string kv = detail::trim(part);
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ArgumentError("parameter '" + kv + "' is not key=value");
      out[detail::trim(kv.substr(0, eq))] = detail::trim(kv.substr(eq + 1));
    }
  }
  return out;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  return in;
}

Family load_family(const Source& s) {
  if (s.family.empty()) throw ArgumentError("--family is required");
  return make_family(s.family, parse_params(s.params));
}

RadialProfile load_profile(const Source& s) {
  if (!s.profile_file.empty() && !s.family.empty()) {
    throw ArgumentError("give either --profile or --family, not both");
  }
  if (!s.profile_file.empty()) {
    auto in = open(s.profile_file);
    return read_profile(in);
  }
  if (!s.family.empty()) return family_profile(load_family(s));
  throw ArgumentError("one of --profile or --family is required");
}

WeightedGraph load_graph(const std::string& path) {
  auto in = open(path);
  return read_graph(in);
}

std::vector<Vertex> parse_ids(const std::string& text) {
  std::vector<Vertex> out;
  for (const auto& tok : detail::split(text, ',')) {
    const std::string t = detail::trim(tok);
    if (t.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != t.size() || t[0] == '-') throw ArgumentError("bad vertex id '" + t + "'");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

json verdict_json(const Verdict& v) {
  json j;
  j["state"] = to_string(v.state);
  j["basis"] = v.basis;
  if (!v.term_class.empty()) j["term_class"] = v.term_class;
  json sums = json::array();
  for (const auto& [d, s] : sampled_partial_sums(v)) sums.push_back({d, s});
  j["partial_sums"] = sums;
  return j;
}

std::string sums_text(const Verdict& v) {
  std::string out;
  for (const auto& [d, s] : sampled_partial_sums(v)) {
    if (d < 8 && d != static_cast<long>(v.partial_sums.size())) continue;
    out += " S(" + std::to_string(d) + ")=" + format_real(s, 8);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const Source& src, bool as_json) {
  const RadialProfile p = load_profile(src);
  const PropertyReport r = full_report(p);
  std::vector<std::pair<std::string, const Verdict*>> rows{{"form_uniqueness", &r.form_uniqueness}};
  const std::pair<const char*, const std::optional<Verdict>*> opt[] = {
      {"neumann_feller", &r.neumann_feller},
      {"dirichlet_feller", &r.dirichlet_feller},
      {"transience", &r.transience},
      {"stochastic_incompleteness", &r.stochastic_incompleteness},
      {"hamburger_esa", &r.hamburger_esa}};
  for (const auto& [name, v] : opt) {
    if (*v) rows.emplace_back(name, &**v);
  }
  std::vector<std::pair<SeriesKind, Verdict>> series;
  for (SeriesKind k : kAllSeries) {
    if (k == SeriesKind::Hamburger && !p.is_birth_death()) continue;
    series.emplace_back(k, series_verdict(p, k));
  }
  if (as_json) {
    json j;
    json props;
    for (const auto& [name, v] : rows) props[name] = verdict_json(*v);
    j["properties"] = props;
    json sj;
    for (const auto& [k, v] : series) sj[to_string(k)] = verdict_json(v);
    j["series"] = sj;
    j["not_applicable"] = r.not_applicable;
    j["consistency_violations"] = r.consistency_violations;
    std::cout << j.dump(2) << '\n';
  } else {
    std::printf("%-27s %-13s %s\n", "property", "verdict", "basis");
    for (const auto& [name, v] : rows) {
      std::printf("%-27s %-13s %s\n", name.c_str(), to_string(v->state), v->basis.c_str());
    }
    for (const auto& na : r.not_applicable) std::printf("not applicable: %s\n", na.c_str());
    std::printf("\n%-16s %-13s %s\n", "series", "converges", "terms / partial sums");
    for (const auto& [k, v] : series) {
      std::printf("%-16s %-13s %s%s\n", to_string(k), to_string(v.state),
                  v.term_class.empty() ? "-" : v.term_class.c_str(), sums_text(v).c_str());
    }
    if (r.consistency_violations.empty()) {
      std::printf("\nconsistency: ok\n");
    } else {
      for (const auto& s : r.consistency_violations) std::printf("\nconsistency violation: %s\n", s.c_str());
    }
  }
  return r.all_decided() ? kOk : kInconclusive;
}

int cmd_harmonic(const Source& src, double alpha, double u0, int depth, bool membership, bool as_json) {
  const RadialProfile p = load_profile(src);
  if (depth < 0) throw ArgumentError("--depth must be >= 0");
  if (static_cast<long>(depth) >= p.known_depth()) {
    throw ArgumentError("profile values are only known for r < " + std::to_string(p.known_depth()));
  }
  const HarmonicSolution s = solve_symmetric_harmonic(p, alpha, u0, depth);
  if (membership) {
    const MembershipReport m = membership_report(p, s);
    const std::pair<const char*, const Verdict*> rows[] = {
        {"bounded", &m.bounded}, {"finite_energy", &m.finite_energy}, {"l1", &m.l1}, {"l2", &m.l2}};
    if (as_json) {
      json j;
      for (const auto& [n, v] : rows) j[n] = verdict_json(*v);
      std::cout << j.dump(2) << '\n';
    } else {
      for (const auto& [n, v] : rows) std::printf("%-14s %-13s %s\n", n, to_string(v->state), v->basis.c_str());
    }
    for (const auto& [n, v] : rows) {
      if (!v->decided()) return kInconclusive;
    }
    return kOk;
  }
  if (as_json) {
    json j;
    j["alpha"] = alpha;
    j["u"] = s.u;
    j["increments"] = s.increments;
    j["partial_l1"] = s.partial_l1;
    j["partial_l2"] = s.partial_l2;
    j["partial_energy"] = s.partial_energy;
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "r,u,increment,partial_l1,partial_l2,partial_energy\n";
  for (std::size_t r = 0; r < s.u.size(); ++r) {
    std::cout << r << ',' << format_real(s.u[r]) << ','
              << (r < s.increments.size() ? format_real(s.increments[r]) : "") << ','
              << format_real(s.partial_l1[r]) << ',' << format_real(s.partial_l2[r]) << ','
              << format_real(s.partial_energy[r]) << '\n';
  }
  return kOk;
}

int cmd_capacity(const Source& src, const std::vector<int>& depths, bool as_json) {
  const Family f = load_family(src);
  const CapacityEstimate est = boundary_capacity_estimate(f, depths);
  if (as_json) {
    json j;
    json rows = json::array();
    for (const auto& r : est.rows) {
      rows.push_back({{"depth", r.depth},
                      {"epsilon", r.epsilon},
                      {"cap", r.capacity},
                      {"truncation", r.truncation},
                      {"trapped_mass", r.trapped_mass},
                      {"status", to_string(r.status)}});
    }
    j["rows"] = rows;
    j["classification"] = to_string(est.classification);
    j["extrapolated"] = est.extrapolated ? json(*est.extrapolated) : json(nullptr);
    j["reason"] = est.reason;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "depth,epsilon,cap\n";
    for (const auto& r : est.rows) {
      std::cout << r.depth << ',' << format_real(r.epsilon) << ',' << format_real(r.capacity) << '\n';
    }
    std::cout << "# classification: " << to_string(est.classification);
    if (est.extrapolated) std::cout << " extrapolated=" << format_real(*est.extrapolated);
    std::cout << " (" << est.reason << ")\n";
  }
  return est.classification == CapacityClass::Undecided ? kInconclusive : kOk;
}

int cmd_family(const Source& src, int depth, const std::string& emit) {
  const Family f = load_family(src);
  if (emit == "graph") {
    if (depth < 0) throw ArgumentError("--depth is required for --emit graph");
    write_graph(std::cout, truncate(f, depth).graph);
  } else if (emit == "profile") {
    write_profile(std::cout, family_profile(f));
  } else {
    throw ArgumentError("--emit must be graph or profile");
  }
  return kOk;
}

int cmd_decompose(const std::string& graph_file, const std::string& x1_text, bool as_json) {
  const WeightedGraph g = load_graph(graph_file);
  const std::vector<Vertex> x1 = parse_ids(x1_text);
  const Decomposition d = decompose(g, x1);
  const BoundaryDegreeVerdict deg = boundary_degree_bounded(d);
  if (as_json) {
    json j;
    j["x1"] = d.x1;
    j["x2"] = d.x2;
    j["edges"] = {{"b1", d.b1.size()}, {"b2", d.b2.size()}, {"b_boundary", d.b_boundary.size()}};
    j["deg_boundary_max"] = deg.sup_estimate;
    j["deg_boundary_argmax"] = deg.argmax;
    json ends = json::array();
    for (const auto& e : d.ends) {
      json je;
      je["vertices"] = e.vertices;
      je["roots"] = e.roots;
      je["weakly_spherically_symmetric"] = e.profile.has_value();
      if (e.profile) je["spheres"] = e.profile->prefix_length() + 1;
      ends.push_back(je);
    }
    j["ends"] = ends;
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::printf("X_1: %zu vertices, X_2: %zu vertices\n", d.x1.size(), d.x2.size());
  std::printf("edges: b_1 %zu, b_2 %zu, b_boundary %zu\n", d.b1.size(), d.b2.size(), d.b_boundary.size());
  std::printf("max Deg_boundary: %s at vertex %zu\n", format_real(deg.sup_estimate, 10).c_str(), deg.argmax);
  std::printf("components of X_2: %zu\n", d.ends.size());
  for (std::size_t i = 0; i < d.ends.size(); ++i) {
    const auto& e = d.ends[i];
    std::printf("  %zu: %zu vertices, %zu attached, %s\n", i, e.vertices.size(), e.roots.size(),
                e.profile ? ("WSS with " + std::to_string(e.profile->prefix_length() + 1) + " spheres").c_str()
                          : "not WSS");
  }
  return kOk;
}

int cmd_ends(const Source& src, const std::vector<int>& depths, bool as_json) {
  const Family f = load_family(src);
  const EndsReport ends = symmetric_ends_verdict(f);
  const Verdict stab = family_stability_verdict(f);
  std::optional<InstabilityReport> inst;
  std::string inst_error;
  const std::string kind = family_kind(f);
  if (kind == "pendant" || kind == "star" || kind == "double_ladder") {
    try {
      inst = instability_example_analyzer(f, depths);
    } catch (const PreconditionError& e) {
      inst_error = e.what();
    }
  }
  // First decided route wins.
  Verdict overall;
  std::string route = "none";
  if (ends.global.decided()) {
    overall = ends.global;
    route = "symmetric ends";
  } else if (stab.decided()) {
    overall = stab;
    route = "stability";
  } else if (inst && inst->verdict.decided()) {
    overall = inst->verdict;
    route = "instability analyzer";
  }
  if (as_json) {
    json j;
    json je = json::array();
    for (const auto& e : ends.ends) {
      je.push_back({{"name", e.name},
                    {"total_mass", to_string(e.total_mass.state)},
                    {"resistance", to_string(e.resistance.state)},
                    {"form_uniqueness", to_string(e.form_uniqueness.state)},
                    {"capacity", to_string(e.capacity)}});
    }
    j["ends"] = je;
    j["unmet_hypotheses"] = ends.unmet;
    j["symmetric_ends"] = verdict_json(ends.global);
    j["stability"] = verdict_json(stab);
    if (inst) {
      json jd = json::array();
      for (const auto& d : inst->depths) {
        jd.push_back({{"depth", d.depth},
                      {"k0", d.k0},
                      {"pattern", d.pattern},
                      {"min_layer_energy", d.min_increment},
                      {"threshold", d.threshold},
                      {"witness", d.witness}});
      }
      j["instability"] = {{"example", inst->example}, {"depths", jd}, {"verdict", verdict_json(inst->verdict)}};
    } else if (!inst_error.empty()) {
      j["instability"] = {{"error", inst_error}};
    }
    j["form_uniqueness"] = {{"state", to_string(overall.state)}, {"route", route}};
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& e : ends.ends) {
      std::printf("end %-14s TotalMass %-12s Resistance %-12s form uniqueness %-12s capacity %s\n",
                  e.name.c_str(), to_string(e.total_mass.state), to_string(e.resistance.state),
                  to_string(e.form_uniqueness.state), to_string(e.capacity));
    }
    std::printf("symmetric ends: %s (%s)\n", to_string(ends.global.state), ends.global.basis.c_str());
    std::printf("stability:      %s (%s)\n", to_string(stab.state), stab.basis.c_str());
    if (inst) {
      std::printf("instability analyzer (%s):\n", inst->example.c_str());
      for (const auto& d : inst->depths) {
        std::printf("  depth %3d  k0 %2d  arrows %-3s  min layer energy %s  threshold %s  %s\n", d.depth, d.k0,
                    d.pattern ? "ok" : "no", format_real(d.min_increment, 8).c_str(),
                    format_real(d.threshold, 3).c_str(), d.witness ? "witness" : "no witness");
      }
      std::printf("  verdict: %s\n", to_string(inst->verdict.state));
    } else if (!inst_error.empty()) {
      std::printf("instability analyzer: %s\n", inst_error.c_str());
    }
    std::printf("form uniqueness: %s (via %s)\n", to_string(overall.state), route.c_str());
  }
  return overall.decided() ? kOk : kInconclusive;
}

int cmd_check(const Source& src, const std::string& roots_text, int depth) {
  std::vector<std::string> problems;
  std::vector<std::string> notes;
  auto check_graph = [&](const WeightedGraph& g, const std::vector<Vertex>& roots) {
    if (!is_connected(g)) {
      problems.push_back("graph is not connected");
      return;
    }
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    VertexFunction f(g.vertex_count()), h(g.vertex_count());
    for (auto& v : f) v = d(rng);
    for (auto& v : h) v = d(rng);
    const double green = inner_product(g, laplacian(g, f), h);
    const double q = energy(g, f, h);
    if (std::abs(green - q) > 1e-9 * std::max(1.0, std::abs(q))) problems.push_back("Green's formula fails");
    if (roots.empty()) return;
    const SphereDecomposition dec = sphere_decomposition(g, roots);
    const SymmetryVerdict sym = check_weak_spherical_symmetry(dec);
    if (!sym) {
      const auto& w = *sym.witness;
      notes.push_back("not weakly spherically symmetric: " + w.quantity + " differs on sphere " +
                      std::to_string(w.radius));
      return;
    }
    notes.push_back("weakly spherically symmetric with " + std::to_string(dec.spheres.size()) + " spheres");
    const VertexFunction af = average(g, dec, f);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      if (lp_norm(g, af, p) > lp_norm(g, f, p) * (1 + 1e-12)) problems.push_back("averaging increases an l^p norm");
    }
    if (energy(g, af) > energy(g, f) * (1 + 1e-12)) problems.push_back("averaging increases the energy");
    if (commutation_residual(g, dec, f) > 1e-10 * std::max(1.0, lp_norm(g, laplacian(g, f), std::numeric_limits<double>::infinity()))) {
      problems.push_back("averaging does not commute with the Laplacian");
    }
  };

  if (!src.graph_file.empty()) {
    check_graph(load_graph(src.graph_file), parse_ids(roots_text));
  } else {
    const bool radial_family = !src.family.empty() && is_radial_family(load_family(src));
    if (!src.profile_file.empty() || radial_family) {
      const RadialProfile p = load_profile(src);
      const PropertyReport r = full_report(p);
      problems.insert(problems.end(), r.consistency_violations.begin(), r.consistency_violations.end());
      if (!r.all_decided()) notes.push_back("some verdicts are inconclusive");
    }
    if (!src.family.empty()) {
      const Family f = load_family(src);
      const Truncation t = truncate(f, depth);
      check_graph(t.graph, radial_family ? t.roots : std::vector<Vertex>{});
      if (!t.x1.empty()) {
        const Decomposition d = decompose(t.graph, t.x1);
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        VertexFunction f2(t.graph.vertex_count());
        for (auto& v : f2) v = u(rng);
        const double q = energy(t.graph, f2);
        const double parts = piece_energy(t.graph, d, f2, 1) + piece_energy(t.graph, d, f2, 2) +
                             boundary_energy(t.graph, d, f2);
        if (std::abs(q - parts) > 1e-12 * std::max(1.0, q)) problems.push_back("Q != Q_1 + Q_2 + Q_boundary");
      }
    }
    if (src.profile_file.empty() && src.family.empty()) throw ArgumentError("nothing to check");
  }
  for (const auto& n : notes) std::printf("note: %s\n", n.c_str());
  for (const auto& p : problems) std::printf("violation: %s\n", p.c_str());
  if (!problems.empty()) return kViolations;
  std::printf("ok\n");
  return kOk;
}

void add_source(CLI::App* app, Source& s, bool profile, bool graph, bool family) {
  if (profile) app->add_option("--profile", s.profile_file, "radial profile file");
  if (graph) app->add_option("--graph", s.graph_file, "graph file");
  if (family) {
    app->add_option("--family", s.family, "family kind or preset name");
    app->add_option("--params", s.params, "family parameters key=value (repeatable, ';' separated)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Form uniqueness and related properties of weakly spherically symmetric graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "structured output");

  Source src;
  auto* analyze = app.add_subcommand("analyze", "verdict table for a radial profile");
  add_source(analyze, src, true, false, true);

  double alpha = 1.0, u0 = 1.0;
  int depth = -1;
  bool membership = false;
  auto* harmonic = app.add_subcommand("harmonic", "spherically symmetric alpha-harmonic function (CSV)");
  add_source(harmonic, src, true, false, true);
  harmonic->add_option("--alpha", alpha, "alpha >= 0")->capture_default_str();
  harmonic->add_option("--u0", u0, "u(0)")->capture_default_str();
  harmonic->add_option("--depth", depth, "last radius")->required();
  harmonic->add_flag("--membership", membership, "print the membership report instead of CSV");

  std::vector<int> depths{8, 16, 32};
  auto* capacity = app.add_subcommand("capacity", "capacity of the Cauchy boundary (CSV)");
  add_source(capacity, src, false, false, true);
  capacity->add_option("--depths", depths, "increasing depths")->delimiter(',')->capture_default_str();

  std::string emit = "graph";
  auto* family = app.add_subcommand("family", "emit a family truncation or profile");
  family->add_option("--name", src.family, "family kind or preset name")->required();
  family->add_option("--params", src.params, "family parameters key=value");
  family->add_option("--depth", depth, "truncation depth");
  family->add_option("--emit", emit, "graph or profile")->capture_default_str();

  std::string x1_text;
  auto* decomp = app.add_subcommand("decompose", "split a graph into X_1 and X_2");
  decomp->add_option("--graph", src.graph_file, "graph file")->required();
  decomp->add_option("--x1", x1_text, "comma-separated vertex ids")->required();

  std::vector<int> ends_depths{20, 40, 80};
  auto* ends = app.add_subcommand("ends", "symmetric ends, stability and instability reports");
  add_source(ends, src, false, false, true);
  ends->add_option("--depths", ends_depths, "analyzer depths")->delimiter(',')->capture_default_str();

  std::string roots_text = "0";
  int check_depth = 6;
  auto* check = app.add_subcommand("check", "run the consistency suite on an input");
  add_source(check, src, true, true, true);
  check->add_option("--roots", roots_text, "root set for graph inputs")->capture_default_str();
  check->add_option("--depth", check_depth, "truncation depth for families")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(src, as_json);
    if (*harmonic) return cmd_harmonic(src, alpha, u0, depth, membership, as_json);
    if (*capacity) return cmd_capacity(src, depths, as_json);
    if (*family) return cmd_family(src, depth, emit);
    if (*decomp) return cmd_decompose(src.graph_file, x1_text, as_json);
    if (*ends) return cmd_ends(src, ends_depths, as_json);
    if (*check) return cmd_check(src, roots_text, check_depth);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const StructureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
