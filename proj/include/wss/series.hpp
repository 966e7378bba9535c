#pragma once

// Radial profiles of weakly spherically symmetric graphs and convergence
// verdicts for the series that characterize their global properties.

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wss/error.hpp"
#include "wss/graph.hpp"
#include "wss/sequence.hpp"
#include "wss/spheres.hpp"

namespace wss {

enum class Convergence { Yes, No, Unknown };

struct ZeroTail {};

/// Tail without a closed form. For the boundary sequence the flag refers to
/// sum 1/dB(r); for the measure and killing sequences to sum a(r).
struct CustomTail {
  Convergence convergent = Convergence::Unknown;
};

using TailModel = std::variant<ZeroTail, ClosedForm, CustomTail>;

enum class Sequence { Boundary, Measure, Killing, Size };

inline const char* to_string(Sequence s) {
  switch (s) {
    case Sequence::Boundary: return "boundary";
    case Sequence::Measure: return "measure";
    case Sequence::Killing: return "killing";
    case Sequence::Size: return "size";
  }
  return "?";
}

/// dB(r), m(S_r), c(S_r), |S_r| given explicitly for r < r0 and by a tail
/// model for r >= r0. Closed-form tails are indexed by the absolute radius.
struct RadialProfile {
  std::vector<double> boundary;
  std::vector<double> measure;
  std::vector<double> killing;
  std::vector<double> size;
  TailModel boundary_tail = CustomTail{};
  TailModel measure_tail = CustomTail{};
  TailModel killing_tail = ZeroTail{};
  TailModel size_tail = CustomTail{};

  long prefix_length() const noexcept { return static_cast<long>(boundary.size()); }

  const std::vector<double>& prefix(Sequence s) const {
    switch (s) {
      case Sequence::Boundary: return boundary;
      case Sequence::Measure: return measure;
      case Sequence::Killing: return killing;
      case Sequence::Size: break;
    }
    return size;
  }

  const TailModel& tail(Sequence s) const {
    switch (s) {
      case Sequence::Boundary: return boundary_tail;
      case Sequence::Measure: return measure_tail;
      case Sequence::Killing: return killing_tail;
      case Sequence::Size: break;
    }
    return size_tail;
  }

  /// Value at radius r, or nothing when r lies in a custom tail.
  std::optional<double> value(Sequence s, long r) const {
    if (r < 0) return std::nullopt;
    if (r < prefix_length()) return prefix(s)[static_cast<std::size_t>(r)];
    const TailModel& t = tail(s);
    if (std::holds_alternative<ZeroTail>(t)) return 0.0;
    if (const auto* f = std::get_if<ClosedForm>(&t)) return (*f)(r);
    return std::nullopt;
  }

  double at(Sequence s, long r) const {
    auto v = value(s, r);
    if (!v) {
      throw PreconditionError(std::string(to_string(s)) + " sequence unknown at radius " +
                              std::to_string(r) + " (custom tail)");
    }
    return *v;
  }

  /// Number of leading radii at which dB, m and c are all known.
  long known_depth() const {
    for (Sequence s : {Sequence::Boundary, Sequence::Measure, Sequence::Killing}) {
      if (std::holds_alternative<CustomTail>(tail(s))) return prefix_length();
    }
    return LONG_MAX;
  }

  void validate() const {
    const std::size_t r0 = boundary.size();
    if (measure.size() != r0 || killing.size() != r0 || size.size() != r0) {
      throw ArgumentError("profile prefix arrays differ in length");
    }
    for (std::size_t r = 0; r < r0; ++r) {
      const std::string at = " at radius " + std::to_string(r);
      if (!(boundary[r] > 0.0) || !std::isfinite(boundary[r])) {
        throw ArgumentError("boundary must be finite and > 0" + at);
      }
      if (!(measure[r] > 0.0) || !std::isfinite(measure[r])) {
        throw ArgumentError("measure must be finite and > 0" + at);
      }
      if (!(killing[r] >= 0.0) || !std::isfinite(killing[r])) {
        throw ArgumentError("killing must be finite and >= 0" + at);
      }
      if (!(size[r] >= 1.0) || size[r] != std::floor(size[r])) {
        throw ArgumentError("sphere size must be a positive integer" + at);
      }
    }
    for (Sequence s : {Sequence::Boundary, Sequence::Measure, Sequence::Size}) {
      if (std::holds_alternative<ZeroTail>(tail(s))) {
        throw ArgumentError(std::string(to_string(s)) + " tail cannot be zero");
      }
    }
    for (Sequence s : {Sequence::Boundary, Sequence::Measure, Sequence::Killing, Sequence::Size}) {
      if (const auto* f = std::get_if<ClosedForm>(&tail(s))) {
        f->validate(static_cast<long>(r0), std::string(to_string(s)) + " tail");
      }
    }
  }

  bool has_zero_killing() const {
    if (!std::holds_alternative<ZeroTail>(killing_tail)) return false;
    return std::all_of(killing.begin(), killing.end(), [](double c) { return c == 0.0; });
  }

  /// One vertex per sphere and no killing.
  bool is_birth_death() const {
    if (!has_zero_killing()) return false;
    if (!std::all_of(size.begin(), size.end(), [](double s) { return s == 1.0; })) return false;
    const auto* f = std::get_if<ClosedForm>(&size_tail);
    if (!f || f->scale != 1.0 || f->rho != 1.0) return false;
    return std::all_of(f->factors.begin(), f->factors.end(),
                       [](const PowerFactor& pf) { return pf.power == 0.0; });
  }
};

/// Profile with no prefix and closed-form tails throughout.
inline RadialProfile closed_form_profile(ClosedForm boundary, ClosedForm measure,
                                         std::optional<ClosedForm> killing = std::nullopt,
                                         ClosedForm size = ClosedForm{}) {
  RadialProfile p;
  p.boundary_tail = std::move(boundary);
  p.measure_tail = std::move(measure);
  p.killing_tail = killing ? TailModel(std::move(*killing)) : TailModel(ZeroTail{});
  p.size_tail = std::move(size);
  p.validate();
  return p;
}

/// Reads the prefix r < depth off a decomposition; tails are custom/unknown.
inline RadialProfile profile_from_graph(const WeightedGraph& g, const SphereDecomposition& dec,
                                        int depth = -1) {
  (void)g;
  if (depth < 0) depth = dec.max_radius();
  if (depth > dec.max_radius()) {
    throw ArgumentError("profile depth " + std::to_string(depth) + " exceeds the graph radius " +
                        std::to_string(dec.max_radius()));
  }
  const SymmetryVerdict sym = check_weak_spherical_symmetry(dec, depth);
  if (!sym) {
    const auto& w = *sym.witness;
    throw StructureError("not weakly spherically symmetric: " + w.quantity + " differs on sphere " +
                         std::to_string(w.radius) + " between vertices " + std::to_string(w.x) +
                         " and " + std::to_string(w.y));
  }
  RadialProfile p;
  for (int r = 0; r < depth; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    p.boundary.push_back(dec.boundary[ur]);
    p.measure.push_back(dec.sphere_measure[ur]);
    p.killing.push_back(dec.sphere_killing[ur]);
    p.size.push_back(static_cast<double>(dec.spheres[ur].size()));
  }
  p.killing_tail = CustomTail{};
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Verdicts

enum class State { Holds, Fails, Inconclusive };

inline const char* to_string(State s) {
  switch (s) {
    case State::Holds: return "Holds";
    case State::Fails: return "Fails";
    case State::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct Verdict {
  State state = State::Inconclusive;
  std::string basis;                 // how the state was reached
  std::string term_class;            // asymptotic class of the terms, when used
  std::vector<double> partial_sums;  // S(0), S(1), ... (diagnostic)

  bool holds() const noexcept { return state == State::Holds; }
  bool fails() const noexcept { return state == State::Fails; }
  bool decided() const noexcept { return state != State::Inconclusive; }
};

inline State negate(State s) {
  if (s == State::Holds) return State::Fails;
  if (s == State::Fails) return State::Holds;
  return s;
}

/// Depths 1, 2, 4, ... (and the last one) with the partial sums there.
inline std::vector<std::pair<long, double>> sampled_partial_sums(const Verdict& v) {
  std::vector<std::pair<long, double>> out;
  const long n = static_cast<long>(v.partial_sums.size());
  for (long d = 1; d <= n; d *= 2) out.emplace_back(d, v.partial_sums[static_cast<std::size_t>(d - 1)]);
  if (n > 0 && (out.empty() || out.back().first != n)) out.emplace_back(n, v.partial_sums.back());
  return out;
}

enum class SeriesKind {
  Resistance,       // sum 1/dB(r)
  TotalMass,        // sum (c+m)(S_r)
  StochasticMass,   // sum m(B_r)/dB(r)
  FellerTail,       // sum m(B_r^c)/dB(r)
  EnergyWeight,     // sum m(B_r)^2/dB(r)
  BoundedHarmonic,  // sum (c+m)(B_r)/dB(r)
  Hamburger,        // sum (sum_{k<=r} 1/b(k,k+1))^2 m(r+1)
};

inline constexpr std::array<SeriesKind, 7> kAllSeries = {
    SeriesKind::Resistance,   SeriesKind::TotalMass,       SeriesKind::StochasticMass,
    SeriesKind::FellerTail,   SeriesKind::EnergyWeight,    SeriesKind::BoundedHarmonic,
    SeriesKind::Hamburger};

inline const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::Resistance: return "Resistance";
    case SeriesKind::TotalMass: return "TotalMass";
    case SeriesKind::StochasticMass: return "StochasticMass";
    case SeriesKind::FellerTail: return "FellerTail";
    case SeriesKind::EnergyWeight: return "EnergyWeight";
    case SeriesKind::BoundedHarmonic: return "BoundedHarmonic";
    case SeriesKind::Hamburger: return "Hamburger";
  }
  return "?";
}

inline std::optional<SeriesKind> series_kind_from_string(const std::string& s) {
  for (SeriesKind k : kAllSeries) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace detail {

inline std::optional<bool> from_flag(Convergence c) {
  if (c == Convergence::Yes) return true;
  if (c == Convergence::No) return false;
  return std::nullopt;
}

/// What is known about the tails: asymptotic classes where closed forms are
/// available, and the three basic convergence facts
///   R: sum 1/dB < inf,  M: m(X) < inf,  C: c(X) < inf.
struct TailFacts {
  std::optional<Growth> boundary, measure, killing;
  std::optional<bool> R, M, C;
  bool killing_prefix_positive = false;
};

inline TailFacts tail_facts(const RadialProfile& p) {
  TailFacts t;
  if (const auto* f = std::get_if<ClosedForm>(&p.boundary_tail)) {
    t.boundary = Growth::of(*f);
    t.R = growth::summable(*growth::reciprocal(*t.boundary));
  } else if (const auto* c = std::get_if<CustomTail>(&p.boundary_tail)) {
    t.R = from_flag(c->convergent);
  }
  if (const auto* f = std::get_if<ClosedForm>(&p.measure_tail)) {
    t.measure = Growth::of(*f);
    t.M = growth::summable(*t.measure);
  } else if (const auto* c = std::get_if<CustomTail>(&p.measure_tail)) {
    t.M = from_flag(c->convergent);
  }
  if (std::holds_alternative<ZeroTail>(p.killing_tail)) {
    t.killing = Growth::vanishing();
    t.C = true;
  } else if (const auto* f = std::get_if<ClosedForm>(&p.killing_tail)) {
    t.killing = Growth::of(*f);
    t.C = growth::summable(*t.killing);
  } else if (const auto* c = std::get_if<CustomTail>(&p.killing_tail)) {
    t.C = from_flag(c->convergent);
  }
  t.killing_prefix_positive =
      std::any_of(p.killing.begin(), p.killing.end(), [](double c) { return c > 0.0; });
  return t;
}

/// Class of the ball sums sum_{k<=r} a(k) given the tail class.
inline Growth ball_class(const Growth& tail, bool prefix_positive) {
  if (tail.zero) return prefix_positive ? Growth::constant() : Growth::vanishing();
  return growth::cumulative(tail);
}

inline Verdict by_class(const Growth& term, const std::string& how) {
  Verdict v;
  v.state = growth::summable(term) ? State::Holds : State::Fails;
  v.term_class = term.describe();
  v.basis = how + "; terms ~ " + v.term_class;
  return v;
}

inline Verdict decided(State s, std::string basis) {
  Verdict v;
  v.state = s;
  v.basis = std::move(basis);
  return v;
}

inline long diagnostic_depth(const RadialProfile& p) {
  return std::max(p.prefix_length() + 64, 256L);
}

/// sum_{k>r} m(S_k) for r < depth, or nothing when it cannot be evaluated.
inline std::optional<std::vector<double>> measure_tails(const RadialProfile& p, long depth,
                                                        const TailFacts& t) {
  if (t.M != std::optional<bool>(true)) return std::nullopt;
  const auto* f = std::get_if<ClosedForm>(&p.measure_tail);
  if (!f) return std::nullopt;
  const long horizon = depth + (1L << 17);
  double s = 0.0;
  // Remainder beyond the horizon from the class of m.
  const double last = (*f)(horizon);
  if (growth::cmp(f->rho, 1.0) < 0) {
    s = last * f->rho / (1.0 - f->rho);
  } else {
    s = last * static_cast<double>(horizon) / (-f->total_power() - 1.0);
  }
  for (long k = horizon - 1; k >= depth; --k) s += (*f)(k);
  std::vector<double> out(static_cast<std::size_t>(depth));
  for (long r = depth - 1; r >= 0; --r) {
    out[static_cast<std::size_t>(r)] = s;
    s += p.at(Sequence::Measure, r);
  }
  return out;
}

/// Partial sums of the series terms over the radii where they can be evaluated.
inline std::vector<double> partial_sums(const RadialProfile& p, SeriesKind kind,
                                        const TailFacts& t) {
  const long depth = std::min(diagnostic_depth(p), p.known_depth());
  std::vector<double> sums;
  std::optional<std::vector<double>> tails;
  if (kind == SeriesKind::FellerTail) {
    tails = measure_tails(p, depth, t);
    if (!tails && t.M != std::optional<bool>(false)) return sums;
  }
  double total = 0.0, ball_m = 0.0, ball_c = 0.0, ball_r = 0.0;
  for (long r = 0; r < depth; ++r) {
    const double b = p.at(Sequence::Boundary, r);
    const double m = p.at(Sequence::Measure, r);
    const double c = p.at(Sequence::Killing, r);
    ball_m += m;
    ball_c += c;
    ball_r += 1.0 / b;
    double term = 0.0;
    switch (kind) {
      case SeriesKind::Resistance: term = 1.0 / b; break;
      case SeriesKind::TotalMass: term = c + m; break;
      case SeriesKind::StochasticMass: term = ball_m / b; break;
      case SeriesKind::FellerTail:
        term = tails ? (*tails)[static_cast<std::size_t>(r)] / b
                     : std::numeric_limits<double>::infinity();
        break;
      case SeriesKind::EnergyWeight: term = ball_m * ball_m / b; break;
      case SeriesKind::BoundedHarmonic: term = (ball_c + ball_m) / b; break;
      case SeriesKind::Hamburger: {
        auto next = p.value(Sequence::Measure, r + 1);
        if (!next) return sums;
        term = ball_r * ball_r * *next;
        break;
      }
    }
    total += term;
    sums.push_back(total);
  }
  return sums;
}

inline Verdict decide(SeriesKind kind, const TailFacts& t) {
  const bool have_bm = t.boundary && t.measure;
  const bool r_fails = t.R == std::optional<bool>(false);
  const bool r_holds = t.R == std::optional<bool>(true);
  const bool m_fails = t.M == std::optional<bool>(false);
  const bool m_holds = t.M == std::optional<bool>(true);
  switch (kind) {
    case SeriesKind::Resistance:
      if (t.boundary) return by_class(*growth::reciprocal(*t.boundary), "closed-form tail of 1/dB");
      if (t.R) return decided(*t.R ? State::Holds : State::Fails, "declared convergence of sum 1/dB");
      break;
    case SeriesKind::TotalMass:
      if (m_fails) return decided(State::Fails, "m(X) = inf");
      if (t.C == std::optional<bool>(false)) return decided(State::Fails, "c(X) = inf");
      if (m_holds && t.C == std::optional<bool>(true)) {
        return decided(State::Holds, "m(X) < inf and c(X) < inf");
      }
      break;
    case SeriesKind::StochasticMass:
      if (have_bm) {
        const Growth ball = ball_class(*t.measure, true);
        return by_class(growth::multiply(ball, *growth::reciprocal(*t.boundary)),
                        "m(B_r)/dB(r) from closed-form tails");
      }
      if (r_fails) return decided(State::Fails, "terms dominate m(S_0)/dB(r) and sum 1/dB = inf");
      if (r_holds && m_holds) return decided(State::Holds, "m(B_r) bounded and sum 1/dB < inf");
      break;
    case SeriesKind::FellerTail:
      if (m_fails) return decided(State::Fails, "m(X) = inf makes every term infinite");
      if (have_bm && m_holds) {
        return by_class(growth::multiply(*growth::tail(*t.measure), *growth::reciprocal(*t.boundary)),
                        "m(B_r^c)/dB(r) from closed-form tails");
      }
      if (r_holds && m_holds) return decided(State::Holds, "m(B_r^c) bounded and sum 1/dB < inf");
      break;
    case SeriesKind::EnergyWeight:
      if (have_bm) {
        const Growth ball = ball_class(*t.measure, true);
        return by_class(growth::multiply(*growth::power(ball, 2.0), *growth::reciprocal(*t.boundary)),
                        "m(B_r)^2/dB(r) from closed-form tails");
      }
      if (r_fails) return decided(State::Fails, "terms dominate m(S_0)^2/dB(r) and sum 1/dB = inf");
      if (r_holds && m_holds) return decided(State::Holds, "m(B_r) bounded and sum 1/dB < inf");
      break;
    case SeriesKind::BoundedHarmonic:
      if (have_bm && t.killing) {
        const Growth ball = growth::add(ball_class(*t.killing, t.killing_prefix_positive),
                                        ball_class(*t.measure, true));
        return by_class(growth::multiply(ball, *growth::reciprocal(*t.boundary)),
                        "(c+m)(B_r)/dB(r) from closed-form tails");
      }
      if (r_fails) return decided(State::Fails, "terms dominate m(S_0)/dB(r) and sum 1/dB = inf");
      if (r_holds && m_holds && t.C == std::optional<bool>(true)) {
        return decided(State::Holds, "(c+m)(B_r) bounded and sum 1/dB < inf");
      }
      break;
    case SeriesKind::Hamburger:
      if (have_bm) {
        const Growth inner = growth::cumulative(*growth::reciprocal(*t.boundary));
        return by_class(growth::multiply(*growth::power(inner, 2.0), *t.measure),
                        "(sum 1/b)^2 m(r+1) from closed-form tails");
      }
      if (m_fails) return decided(State::Fails, "terms dominate m(r+1)/b(0,1)^2 and m(X) = inf");
      if (r_holds && m_holds) return decided(State::Holds, "inner sums bounded and m(X) < inf");
      break;
  }
  Verdict v;
  v.state = State::Inconclusive;
  v.basis = "tail model does not decide this series";
  return v;
}

}  // namespace detail

/// Holds iff the series of the given kind converges. Hamburger requires a
/// birth-death profile (PreconditionError otherwise).
inline Verdict series_verdict(const RadialProfile& p, SeriesKind kind) {
  p.validate();
  if (kind == SeriesKind::Hamburger && !p.is_birth_death()) {
    throw PreconditionError("Hamburger series needs a birth-death profile (|S_r| = 1, c = 0)");
  }
  const detail::TailFacts t = detail::tail_facts(p);
  Verdict v = detail::decide(kind, t);
  v.partial_sums = detail::partial_sums(p, kind, t);
  return v;
}

/// Cross-checks between the series verdicts of one profile. Returns a
/// description of each violated implication (empty when consistent).
inline std::vector<std::string> series_consistency_violations(const RadialProfile& p) {
  std::vector<std::string> out;
  const detail::TailFacts t = detail::tail_facts(p);
  auto get = [&](SeriesKind k) { return series_verdict(p, k); };
  const Verdict res = get(SeriesKind::Resistance);
  const Verdict tot = get(SeriesKind::TotalMass);
  const Verdict sto = get(SeriesKind::StochasticMass);
  const Verdict ene = get(SeriesKind::EnergyWeight);
  const Verdict bnd = get(SeriesKind::BoundedHarmonic);
  if (sto.holds() && !res.holds()) out.push_back("StochasticMass holds but Resistance does not");
  if (ene.holds() && !res.holds()) out.push_back("EnergyWeight holds but Resistance does not");
  // With c(X) = inf the killing term can make (c+m)(B_r) outgrow m(B_r)^2.
  if (ene.holds() && t.C == std::optional<bool>(true) && !bnd.holds()) {
    out.push_back("EnergyWeight holds but BoundedHarmonic does not");
  }
  if (tot.holds() && res.holds() && !ene.holds()) {
    out.push_back("TotalMass and Resistance hold but EnergyWeight does not");
  }
  std::vector<SeriesKind> kinds(kAllSeries.begin(), kAllSeries.end());
  if (!p.is_birth_death()) kinds.pop_back();
  for (SeriesKind k : kinds) {
    const Verdict v = get(k);
    for (std::size_t i = 1; i < v.partial_sums.size(); ++i) {
      if (!(v.partial_sums[i] >= v.partial_sums[i - 1])) {
        out.push_back(std::string(to_string(k)) + " partial sums decrease at depth " +
                      std::to_string(i));
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Radial length under the degree path metric.
//
// Profiles carry no intra-sphere edges, so the sphere degree is
// Deg(r) = (dB(r) + dB(r-1) + c(S_r)) / m(S_r) and the radial edge length is
// sigma(r) = min(Deg(r)^{-1/2}, Deg(r+1)^{-1/2}).

inline double radial_degree(const RadialProfile& p, long r) {
  double s = p.at(Sequence::Boundary, r) + p.at(Sequence::Killing, r);
  if (r > 0) s += p.at(Sequence::Boundary, r - 1);
  return s / p.at(Sequence::Measure, r);
}

inline double radial_length(const RadialProfile& p, long r) {
  return std::min(1.0 / std::sqrt(radial_degree(p, r)), 1.0 / std::sqrt(radial_degree(p, r + 1)));
}

struct RadialReach {
  Verdict finite;                // Holds iff sum_r sigma(r) < inf
  std::optional<double> length;  // total radial length when finite
  std::optional<Growth> sigma_class;
};

/// S(r) = sum_{k>=r} a(k) for r = 0..depth of a positive summable sequence
/// in class `cls`, summed backwards from a far horizon plus a class-based
/// estimate of the remainder beyond it.
template <class Term>
std::vector<double> suffix_sums(const Term& a, const Growth& cls, long depth) {
  const long horizon = depth + (1L << 16);
  double s = 0.0;
  if (!cls.zero) {
    const double last = a(horizon);
    s = growth::cmp(cls.rho, 1.0) < 0 ? last * cls.rho / (1.0 - cls.rho)
                                      : last * static_cast<double>(horizon) / (-cls.power - 1.0);
  }
  for (long r = horizon - 1; r > depth; --r) s += a(r);
  std::vector<double> out(static_cast<std::size_t>(depth + 1));
  for (long r = depth; r >= 0; --r) {
    s += a(r);
    out[static_cast<std::size_t>(r)] = s;
  }
  return out;
}

namespace detail {

inline std::vector<double> radial_suffix_sums(const RadialProfile& p, long depth,
                                              const Growth& sigma) {
  return suffix_sums([&](long r) { return radial_length(p, r); }, sigma, depth);
}

}  // namespace detail

inline RadialReach radial_boundary_reach(const RadialProfile& p) {
  p.validate();
  RadialReach out;
  const detail::TailFacts t = detail::tail_facts(p);
  const long depth = std::min(detail::diagnostic_depth(p), p.known_depth() - 1);
  std::vector<double> sums;
  double total = 0.0;
  for (long r = 0; r < depth; ++r) {
    total += radial_length(p, r);
    sums.push_back(total);
  }
  if (!(t.boundary && t.measure && t.killing)) {
    out.finite.basis = "tail model does not decide the radial length";
    out.finite.partial_sums = std::move(sums);
    return out;
  }
  const Growth deg = growth::multiply(growth::add(*t.boundary, *t.killing),
                                      *growth::reciprocal(*t.measure));
  const auto sigma = growth::power(deg, -0.5);
  if (!sigma) {
    out.finite.basis = "degree class has logarithmic factors";
    out.finite.partial_sums = std::move(sums);
    return out;
  }
  out.sigma_class = *sigma;
  out.finite = detail::by_class(*sigma, "Deg(r)^{-1/2} from closed-form tails");
  out.finite.partial_sums = std::move(sums);
  if (out.finite.holds()) out.length = detail::radial_suffix_sums(p, 0, *sigma).front();
  return out;
}

/// Remaining radial length L(r) = sum_{k>=r} sigma(k) for r = 0..depth, when
/// the total is finite.
inline std::optional<std::vector<double>> radial_tail_lengths(const RadialProfile& p, long depth) {
  const RadialReach reach = radial_boundary_reach(p);
  if (!reach.length) return std::nullopt;
  return detail::radial_suffix_sums(p, depth, *reach.sigma_class);
}

}  // namespace wss
