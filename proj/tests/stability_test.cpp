#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "wss/stability.hpp"

namespace wss {
namespace {

using testing::rel_err;

TEST(Decompose, WholeGraph) {
  std::mt19937_64 rng(1);
  const auto g = testing::random_graph(rng, 12);
  std::vector<Vertex> all(12);
  for (Vertex x = 0; x < 12; ++x) all[x] = x;
  const auto d = decompose(g, all);
  EXPECT_TRUE(d.b2.empty());
  EXPECT_TRUE(d.b_boundary.empty());
  EXPECT_EQ(d.b1.size(), g.edge_count());
  EXPECT_TRUE(d.ends.empty());
}

TEST(Decompose, BilateralChain) {
  const Truncation t = truncate(make_family("bilateral_unit", {}), 6);
  const auto d = decompose(t.graph, t.x1);
  ASSERT_EQ(d.ends.size(), 2u);
  ASSERT_EQ(d.b_boundary.size(), 2u);
  for (const auto& e : d.b_boundary) EXPECT_TRUE(e.u == 0 || e.v == 0);
  for (const auto& end : d.ends) {
    EXPECT_EQ(end.vertices.size(), 6u);
    ASSERT_TRUE(end.profile.has_value());
    EXPECT_EQ(end.profile->prefix_length(), 5);
  }
}

TEST(Decompose, PendantChain) {
  const int depth = 8;
  const Truncation t = truncate(make_family("pendant_poly", {}), depth);
  const auto d = decompose(t.graph, t.x1);
  EXPECT_TRUE(d.b2.empty());
  EXPECT_EQ(d.b_boundary.size(), static_cast<std::size_t>(depth + 1));
  EXPECT_EQ(d.ends.size(), static_cast<std::size_t>(depth + 1));
}

TEST(Decompose, EnergyAndNormSplitting) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_graph(rng, 10 + trial % 30);
    std::vector<Vertex> x1;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      if (u(rng) < 0.4) x1.push_back(x);
    }
    const auto d = decompose(g, x1);
    EXPECT_EQ(d.b1.size() + d.b2.size() + d.b_boundary.size(), g.edge_count());
    const auto f = testing::random_function(rng, g.vertex_count());
    const double q = energy(g, f);
    EXPECT_LE(rel_err(q, piece_energy(g, d, f, 1) + piece_energy(g, d, f, 2) + boundary_energy(g, d, f)),
              1e-12);
    const double n2 = inner_product(g, f, f);
    EXPECT_LE(rel_err(n2, piece_norm_sq(g, d, f, 1) + piece_norm_sq(g, d, f, 2)), 1e-12);
    const double dmax = boundary_degree_bounded(d).sup_estimate;
    EXPECT_LE(boundary_energy(g, d, f), 2.0 * dmax * n2 * (1 + 1e-12));
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      double s = 0.0;
      for (const auto& e : d.b_boundary) {
        if (e.u == x || e.v == x) s += e.weight;
      }
      EXPECT_NEAR(d.deg_boundary[x], s / g.measure(x), 1e-12);
    }
  }
}

TEST(BoundaryDegree, Families) {
  const auto p45 = family_boundary_degree(make_family("pendant_geom", {}));
  EXPECT_EQ(p45.bounded, State::Holds);
  EXPECT_DOUBLE_EQ(p45.sup_estimate, 1.0);
  const Truncation t = truncate(make_family("pendant_geom", {}), 10);
  const auto d = decompose(t.graph, t.x1);
  for (Vertex x : t.x1) EXPECT_NEAR(d.deg_boundary[x], 1.0, 1e-12);

  EXPECT_EQ(family_boundary_degree(make_family("pendant_poly", {})).bounded, State::Fails);
  EXPECT_EQ(family_boundary_degree(make_family("star_poly", {})).bounded, State::Fails);
  EXPECT_EQ(family_boundary_degree(make_family("ladder_poly", {})).bounded, State::Fails);
  EXPECT_EQ(family_boundary_degree(make_family("bilateral_mixed", {})).bounded, State::Holds);

  // Unbounded trend on truncations of the pendant example with m(k) summable.
  double prev = 0.0;
  for (int depth : {5, 10, 20}) {
    const Truncation tt = truncate(make_family("pendant_poly", {}), depth);
    const double sup = boundary_degree_bounded(decompose(tt.graph, tt.x1)).sup_estimate;
    EXPECT_GT(sup, prev);
    prev = sup;
  }
}

TEST(Stability, Combination) {
  BoundaryDegreeVerdict bounded;
  bounded.bounded = State::Holds;
  Verdict h, fl;
  h.state = State::Holds;
  fl.state = State::Fails;
  EXPECT_EQ(stability_verdict(bounded, h, h).state, State::Holds);
  EXPECT_EQ(stability_verdict(bounded, h, fl).state, State::Fails);
  BoundaryDegreeVerdict unbounded;
  unbounded.bounded = State::Fails;
  const auto v = stability_verdict(unbounded, h, h);
  EXPECT_EQ(v.state, State::Inconclusive);
  EXPECT_NE(v.basis.find("hypothesis unmet"), std::string::npos);

  EXPECT_EQ(family_stability_verdict(make_family("pendant_geom", {})).state, State::Fails);
  EXPECT_EQ(family_stability_verdict(make_family("pendant_poly", {})).state, State::Inconclusive);
}

TEST(SymmetricEnds, Bilateral) {
  const auto mixed = symmetric_ends_verdict(make_family("bilateral_mixed", {}));
  EXPECT_EQ(mixed.global.state, State::Fails);
  ASSERT_EQ(mixed.ends.size(), 2u);
  EXPECT_EQ(mixed.ends[0].form_uniqueness.state, State::Fails);
  EXPECT_EQ(mixed.ends[0].capacity, CapacityClass::PositiveFinite);
  EXPECT_EQ(mixed.ends[1].total_mass.state, State::Fails);  // m(X) = inf
  EXPECT_EQ(symmetric_ends_verdict(make_family("bilateral_unit", {})).global.state, State::Holds);
}

TEST(SymmetricEnds, LadderHypothesisFails) {
  const auto r = symmetric_ends_verdict(make_family("ladder_poly", {}));
  EXPECT_EQ(r.global.state, State::Inconclusive);
  ASSERT_FALSE(r.unmet.empty());
  EXPECT_NE(r.unmet.front().find("Deg_boundary"), std::string::npos);
  // The x rail alone is not form unique.
  EXPECT_EQ(r.ends[0].form_uniqueness.state, State::Fails);
}

TEST(Instability, AllThreeExamples) {
  const std::vector<int> depths{20, 40, 80};
  for (const char* name : {"pendant_poly", "star_poly", "ladder_poly"}) {
    const auto r = instability_example_analyzer(make_family(name, {}), depths);
    EXPECT_EQ(r.verdict.state, State::Holds) << name;
    for (const auto& d : r.depths) {
      EXPECT_TRUE(d.pattern) << name << " " << d.pattern_note;
      EXPECT_TRUE(d.witness) << name;
      EXPECT_EQ(d.layer_energy.size(), static_cast<std::size_t>(d.depth + 1));
    }
  }
  // Pendant with b = m = 1: each vertical edge carries u(k)^2 / 4 >= u(0)^2 / 4.
  const auto p = instability_example_analyzer(make_family("pendant_poly", {}), depths);
  for (const auto& d : p.depths) {
    EXPECT_LE(d.identity_error, 1e-10);
    EXPECT_GE(d.min_increment, 0.25 * d.u0 * d.u0 * (1 - 1e-12));
  }
}

TEST(Instability, HypothesisViolation) {
  const std::vector<int> depths{20};
  EXPECT_THROW(instability_example_analyzer(make_family("pendant_geom", {}), depths), PreconditionError);
  EXPECT_THROW(instability_example_analyzer(make_family("geom_chain", {}), depths), PreconditionError);
}

}  // namespace
}  // namespace wss
