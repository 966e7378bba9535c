#pragma once

// Property verdicts for radial profiles and cross-property consistency.
//
// Every verdict is phrased as "the named property holds": form uniqueness
// holds when Q^(D) = Q^(N), neumann_feller holds when the Neumann semigroup is
// Feller, hamburger_esa holds when the birth-death Laplacian is essentially
// self-adjoint.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "wss/error.hpp"
#include "wss/harmonic.hpp"
#include "wss/series.hpp"

namespace wss {

namespace detail {

inline State and3(State a, State b) {
  if (a == State::Fails || b == State::Fails) return State::Fails;
  if (a == State::Holds && b == State::Holds) return State::Holds;
  return State::Inconclusive;
}

inline std::string series_note(SeriesKind k, const Verdict& v) {
  std::string s = std::string(to_string(k)) + " " + to_string(v.state);
  if (!v.term_class.empty()) s += " (terms ~ " + v.term_class + ")";
  return s;
}

inline void require_zero_killing(const RadialProfile& p, const char* what) {
  if (!p.has_zero_killing()) {
    throw PreconditionError(std::string(what) + " is only characterized for c = 0");
  }
}

}  // namespace detail

/// Holds iff NOT (TotalMass and Resistance both converge).
inline Verdict form_uniqueness_verdict(const RadialProfile& p) {
  const Verdict tot = series_verdict(p, SeriesKind::TotalMass);
  const Verdict res = series_verdict(p, SeriesKind::Resistance);
  Verdict v;
  v.state = negate(detail::and3(tot.state, res.state));
  v.basis = "Q(D) != Q(N) iff (c+m)(X) < inf and sum 1/dB < inf; " +
            detail::series_note(SeriesKind::TotalMass, tot) + ", " +
            detail::series_note(SeriesKind::Resistance, res);
  v.partial_sums = res.partial_sums;
  return v;
}

/// Holds iff the Neumann semigroup is Feller, i.e. FellerTail diverges.
inline Verdict neumann_feller_verdict(const RadialProfile& p) {
  detail::require_zero_killing(p, "the Neumann Feller property");
  const Verdict f = series_verdict(p, SeriesKind::FellerTail);
  Verdict v;
  v.state = negate(f.state);
  v.basis = "not Feller iff sum m(B_r^c)/dB(r) < inf; " + detail::series_note(SeriesKind::FellerTail, f);
  v.term_class = f.term_class;
  v.partial_sums = f.partial_sums;
  return v;
}

/// Holds iff the Dirichlet semigroup is Feller: non-Feller iff Resistance
/// diverges and FellerTail converges.
inline Verdict dirichlet_feller_verdict(const RadialProfile& p) {
  detail::require_zero_killing(p, "the Dirichlet Feller property");
  const Verdict res = series_verdict(p, SeriesKind::Resistance);
  const Verdict f = series_verdict(p, SeriesKind::FellerTail);
  Verdict v;
  v.state = negate(detail::and3(negate(res.state), f.state));
  v.basis = "not Feller iff sum 1/dB = inf and sum m(B_r^c)/dB < inf; " +
            detail::series_note(SeriesKind::Resistance, res) + ", " +
            detail::series_note(SeriesKind::FellerTail, f);
  v.partial_sums = f.partial_sums;
  return v;
}

inline Verdict transience_verdict(const RadialProfile& p) {
  detail::require_zero_killing(p, "transience");
  Verdict v = series_verdict(p, SeriesKind::Resistance);
  v.basis = "transient iff sum 1/dB(r) < inf; " + v.basis;
  return v;
}

inline Verdict stochastic_incompleteness_verdict(const RadialProfile& p) {
  detail::require_zero_killing(p, "stochastic incompleteness");
  Verdict v = series_verdict(p, SeriesKind::StochasticMass);
  v.basis = "stochastically incomplete iff sum m(B_r)/dB(r) < inf; " + v.basis;
  return v;
}

/// Essential self-adjointness of a birth-death chain. The chain is in the
/// limit circle case, hence not essentially self-adjoint, exactly when both
/// harmonic solutions 1 and sum_{k<r} 1/b(k,k+1) lie in ell^2, i.e. when the
/// Hamburger series converges. So this holds iff the series diverges.
inline Verdict hamburger_esa_verdict(const RadialProfile& p) {
  const Verdict h = series_verdict(p, SeriesKind::Hamburger);
  Verdict v;
  v.state = negate(h.state);
  v.basis = h.fails() ? "Hamburger series diverges, essentially self-adjoint"
            : h.holds() ? "Hamburger series converges, not essentially self-adjoint"
                        : "Hamburger series undecided";
  v.basis += "; " + h.basis;
  v.term_class = h.term_class;
  v.partial_sums = h.partial_sums;
  return v;
}

struct PropertyReport {
  Verdict form_uniqueness;
  // Absent when the profile carries killing (or, for hamburger_esa, is not a
  // birth-death chain); `not_applicable` says why.
  std::optional<Verdict> neumann_feller;
  std::optional<Verdict> dirichlet_feller;
  std::optional<Verdict> transience;
  std::optional<Verdict> stochastic_incompleteness;
  std::optional<Verdict> hamburger_esa;
  std::vector<std::string> not_applicable;
  std::vector<std::string> consistency_violations;

  bool all_decided() const {
    if (!form_uniqueness.decided()) return false;
    for (const auto* v : {&neumann_feller, &dirichlet_feller, &transience,
                          &stochastic_incompleteness, &hamburger_esa}) {
      if (*v && !(*v)->decided()) return false;
    }
    return true;
  }
};

namespace detail {

inline std::vector<std::string> report_violations(const RadialProfile& p, const PropertyReport& r) {
  std::vector<std::string> out = series_consistency_violations(p);
  const State fu = r.form_uniqueness.state;
  if (r.transience) {
    const State tr = r.transience->state;
    const State si = r.stochastic_incompleteness->state;
    const State nf = r.neumann_feller->state;
    const State df = r.dirichlet_feller->state;
    if (fu == State::Fails) {
      if (si == State::Fails) out.push_back("form uniqueness fails but stochastically complete");
      if (tr == State::Fails) out.push_back("form uniqueness fails but recurrent");
      if (nf == State::Holds) out.push_back("form uniqueness fails but Neumann semigroup is Feller");
    }
    const State tot = series_verdict(p, SeriesKind::TotalMass).state;
    if (tot == State::Holds && fu != State::Inconclusive && si != State::Inconclusive &&
        tr != State::Inconclusive) {
      const State nfu = negate(fu);
      if (!(nfu == si && si == tr)) {
        out.push_back("m(X) < inf but non-uniqueness, stochastic incompleteness and transience differ");
      }
    }
    if (nf != State::Inconclusive && df != State::Inconclusive && fu != State::Inconclusive) {
      const bool lhs = nf == State::Fails;
      const bool rhs = df == State::Fails || fu == State::Fails;
      if (lhs != rhs) {
        out.push_back("Neumann non-Feller differs from (Dirichlet non-Feller or non-uniqueness)");
      }
    }
  }
  if (r.hamburger_esa && r.hamburger_esa->holds() && fu == State::Fails) {
    out.push_back("essentially self-adjoint but form uniqueness fails");
  }
  // A positive ell^1 alpha-harmonic function forces FellerTail < inf.
  const long depth = std::min<long>(64, p.known_depth() - 1);
  if (p.has_zero_killing() && depth >= 1) {
    const HarmonicSolution sol = solve_symmetric_harmonic(p, 1.0, 1.0, static_cast<int>(depth));
    const MembershipReport m = membership_report(p, sol);
    if (m.l1.holds() && series_verdict(p, SeriesKind::FellerTail).fails()) {
      out.push_back("ell^1 alpha-harmonic function exists but FellerTail diverges");
    }
  }
  return out;
}

}  // namespace detail

inline PropertyReport full_report(const RadialProfile& p) {
  p.validate();
  PropertyReport r;
  r.form_uniqueness = form_uniqueness_verdict(p);
  if (p.has_zero_killing()) {
    r.neumann_feller = neumann_feller_verdict(p);
    r.dirichlet_feller = dirichlet_feller_verdict(p);
    r.transience = transience_verdict(p);
    r.stochastic_incompleteness = stochastic_incompleteness_verdict(p);
  } else {
    r.not_applicable.push_back(
        "neumann_feller, dirichlet_feller, transience, stochastic_incompleteness: need c = 0");
  }
  if (p.is_birth_death()) {
    r.hamburger_esa = hamburger_esa_verdict(p);
  } else {
    r.not_applicable.push_back("hamburger_esa: needs a birth-death profile");
  }
  r.consistency_violations = detail::report_violations(p, r);
  return r;
}

}  // namespace wss
