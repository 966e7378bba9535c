#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "wss/criteria.hpp"
#include "wss/families.hpp"

namespace wss {
namespace {

RadialProfile preset(const std::string& name) { return family_profile(make_family(name, {})); }

RadialProfile chain(ClosedForm b, ClosedForm m) { return closed_form_profile(b, m, std::nullopt); }

ClosedForm geo(double rho) { return ClosedForm{1, rho, {}}; }
ClosedForm pw(double p) { return ClosedForm{1, 1, {{1, p}}}; }

TEST(FormUniqueness, GalleryTable) {
  EXPECT_EQ(form_uniqueness_verdict(preset("geom_chain")).state, State::Fails);
  EXPECT_EQ(form_uniqueness_verdict(preset("unit_chain")).state, State::Holds);
  EXPECT_EQ(form_uniqueness_verdict(preset("antitree_linear")).state, State::Holds);
  EXPECT_EQ(form_uniqueness_verdict(preset("binary_tree")).state, State::Holds);
  EXPECT_EQ(form_uniqueness_verdict(preset("antitree_geomass")).state, State::Fails);
  // Infinite mass wins whatever dB is.
  EXPECT_EQ(form_uniqueness_verdict(chain(geo(3), ClosedForm{})).state, State::Holds);
  EXPECT_EQ(series_verdict(preset("antitree_linear"), SeriesKind::Resistance).state, State::Holds);
}

TEST(FormUniqueness, InconclusivePropagatesUnlessShortCircuited) {
  RadialProfile p = chain(ClosedForm{}, ClosedForm{});
  p.boundary_tail = CustomTail{Convergence::Unknown};
  EXPECT_EQ(form_uniqueness_verdict(p).state, State::Holds);  // m(X) = inf decides
  p.measure_tail = ClosedForm{1, 0.5, {}};
  EXPECT_EQ(form_uniqueness_verdict(p).state, State::Inconclusive);
}

TEST(Feller, Neumann) {
  EXPECT_EQ(neumann_feller_verdict(preset("geom_chain")).state, State::Fails);
  const auto p = chain(pw(1), ClosedForm{});
  EXPECT_EQ(neumann_feller_verdict(p).state, State::Holds);
  const auto k = closed_form_profile(geo(2), geo(0.5), ClosedForm{});
  EXPECT_THROW(neumann_feller_verdict(k), PreconditionError);
  EXPECT_THROW(dirichlet_feller_verdict(k), PreconditionError);
  EXPECT_THROW(transience_verdict(k), PreconditionError);
  EXPECT_THROW(stochastic_incompleteness_verdict(k), PreconditionError);
}

TEST(Feller, Dirichlet) {
  // Resistance diverges and FellerTail converges: b = 1, m = (r+1)^-4.
  const auto a = chain(ClosedForm{}, pw(-4));
  ASSERT_EQ(series_verdict(a, SeriesKind::Resistance).state, State::Fails);
  ASSERT_EQ(series_verdict(a, SeriesKind::FellerTail).state, State::Holds);
  EXPECT_EQ(dirichlet_feller_verdict(a).state, State::Fails);
  EXPECT_EQ(dirichlet_feller_verdict(preset("geom_chain")).state, State::Holds);
  EXPECT_EQ(dirichlet_feller_verdict(chain(pw(2), ClosedForm{})).state, State::Holds);
}

TEST(Transience, Examples) {
  EXPECT_EQ(transience_verdict(preset("binary_tree")).state, State::Holds);
  EXPECT_EQ(transience_verdict(preset("unit_chain")).state, State::Fails);
  EXPECT_EQ(transience_verdict(preset("antitree_linear")).state, State::Holds);
}

TEST(StochasticIncompleteness, Examples) {
  EXPECT_EQ(stochastic_incompleteness_verdict(preset("binary_tree")).state, State::Fails);
  EXPECT_EQ(stochastic_incompleteness_verdict(preset("antitree_quadratic")).state, State::Fails);
  EXPECT_EQ(stochastic_incompleteness_verdict(preset("geom_chain")).state, State::Holds);
}

TEST(Hamburger, Polarity) {
  // Bounded Laplacian: essentially self-adjoint while the series diverges.
  const auto unit = preset("unit_chain");
  EXPECT_EQ(series_verdict(unit, SeriesKind::Hamburger).state, State::Fails);
  EXPECT_EQ(hamburger_esa_verdict(unit).state, State::Holds);
  // Form uniqueness fails, so there are two Markov realizations.
  const auto g = preset("geom_chain");
  EXPECT_EQ(series_verdict(g, SeriesKind::Hamburger).state, State::Holds);
  EXPECT_EQ(hamburger_esa_verdict(g).state, State::Fails);
  EXPECT_THROW(hamburger_esa_verdict(preset("binary_tree")), PreconditionError);
}

TEST(HamburgerSeries, BruteForceAgreement) {
  // Terms computed directly: (sum_{k<=r} 2^-k)^2 2^-(r+1).
  const auto g = preset("geom_chain");
  const Verdict v = series_verdict(g, SeriesKind::Hamburger);
  double inner = 0.0, total = 0.0;
  for (std::size_t r = 0; r < 30; ++r) {
    inner += std::ldexp(1.0, -static_cast<int>(r));
    total += inner * inner * std::ldexp(1.0, -static_cast<int>(r) - 1);
    ASSERT_NEAR(v.partial_sums[r], total, 1e-12 * total);
  }
}

TEST(FullReport, NotApplicableParts) {
  const auto tree = full_report(preset("binary_tree"));
  EXPECT_FALSE(tree.hamburger_esa.has_value());
  ASSERT_TRUE(tree.transience.has_value());
  EXPECT_EQ(tree.not_applicable.size(), 1u);
  const auto k = full_report(closed_form_profile(geo(2), geo(0.5), ClosedForm{}));
  EXPECT_FALSE(k.transience.has_value());
  EXPECT_EQ(k.form_uniqueness.state, State::Holds);
  EXPECT_TRUE(k.all_decided());
}

TEST(FullReport, GalleryConsistent) {
  for (const auto& name : gallery_names()) {
    const auto r = full_report(preset(name));
    EXPECT_TRUE(r.consistency_violations.empty()) << name << ": " << r.consistency_violations.front();
    EXPECT_TRUE(r.all_decided()) << name;
  }
}

TEST(FullReport, RandomProfilesConsistent) {
  std::mt19937_64 rng(5);
  int fu_fails = 0, finite_mass = 0;
  for (int i = 0; i < 500; ++i) {
    const auto p = testing::random_profile(rng, false);
    const auto r = full_report(p);
    ASSERT_TRUE(r.all_decided());
    EXPECT_TRUE(r.consistency_violations.empty()) << r.consistency_violations.front();
    fu_fails += r.form_uniqueness.fails();
    finite_mass += series_verdict(p, SeriesKind::TotalMass).holds();
  }
  // The sample exercises both branches of the implication checks.
  EXPECT_GT(fu_fails, 20);
  EXPECT_GT(finite_mass, 50);
}

}  // namespace
}  // namespace wss
