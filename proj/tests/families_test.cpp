#include <gtest/gtest.h>

#include "test_util.hpp"
#include "wss/families.hpp"
#include "wss/sequence_spec.hpp"

namespace wss {
namespace {

TEST(SequenceSpec, Grammar) {
  EXPECT_DOUBLE_EQ(parse_sequence("2^r")(5), 32.0);
  EXPECT_DOUBLE_EQ(parse_sequence("2^-r")(3), 0.125);
  EXPECT_DOUBLE_EQ(parse_sequence("(r+1)^-3")(1), 0.125);
  EXPECT_DOUBLE_EQ(parse_sequence("1/(r+1)^2")(2), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(parse_sequence("3*(r+2)^2*0.5^r")(1), 3.0 * 9.0 * 0.5);
  EXPECT_DOUBLE_EQ(parse_sequence("linear")(4), 5.0);
  const SeqSpec o = parse_sequence("2^r | 0=5, 2=7");
  EXPECT_EQ(o(0), 5.0);
  EXPECT_EQ(o(1), 2.0);
  EXPECT_EQ(o(2), 7.0);
  EXPECT_EQ(o(3), 8.0);
  EXPECT_EQ(o.prefix_length(), 3);
  EXPECT_THROW(parse_sequence("2^^r"), ArgumentError);
  EXPECT_THROW(parse_sequence(""), ArgumentError);
}

TEST(Families, BirthDeath) {
  const auto unit = family_profile(make_family("birth_death", {}));
  for (long r = 0; r < 10; ++r) EXPECT_EQ(unit.at(Sequence::Boundary, r), 1.0);
  const Family g = make_family("birth_death", {{"b", "2^r"}, {"m", "2^-r"}});
  const auto p = family_profile(g);
  for (long r = 0; r < 10; ++r) EXPECT_EQ(p.at(Sequence::Boundary, r), std::ldexp(1.0, static_cast<int>(r)));
  const Truncation t = truncate(g, 8);
  const auto dec = sphere_decomposition(t.graph, t.roots);
  for (Vertex x = 0; x < 8; ++x) {
    EXPECT_DOUBLE_EQ(dec.kappa_plus[x], std::ldexp(1.0, static_cast<int>(x)) / std::ldexp(1.0, -static_cast<int>(x)));
  }
}

TEST(Families, Trees) {
  const auto ray = family_profile(make_family("tree", {{"k", "1"}}));
  for (long r = 0; r < 10; ++r) EXPECT_EQ(ray.at(Sequence::Boundary, r), 1.0);
  const Family bin = make_family("binary_tree", {});
  const auto p = family_profile(bin);
  for (long r = 0; r < 10; ++r) EXPECT_EQ(p.at(Sequence::Boundary, r), std::ldexp(1.0, static_cast<int>(r + 1)));
  const Truncation t = truncate(bin, 6);
  const auto dec = sphere_decomposition(t.graph, t.roots);
  for (double k0 : dec.kappa_zero) EXPECT_EQ(k0, 0.0);
  for (int r = 0; r < 6; ++r) EXPECT_EQ(dec.spheres[r + 1].size(), 2 * dec.spheres[r].size());
}

TEST(Families, AntiTrees) {
  const auto ray = family_profile(make_family("anti_tree", {{"s", "1"}}));
  for (long r = 0; r < 10; ++r) EXPECT_EQ(ray.at(Sequence::Boundary, r), 1.0);
  const Family lin = make_family("antitree_linear", {});
  const auto p = family_profile(lin);
  for (long r = 0; r < 10; ++r) EXPECT_EQ(p.at(Sequence::Boundary, r), double((r + 1) * (r + 2)));
  const Truncation t = truncate(lin, 7);
  const auto dec = sphere_decomposition(t.graph, t.roots);
  for (int r = 0; r < 7; ++r) {
    std::size_t between = 0;
    for (const auto& e : t.graph.edges()) {
      const int a = dec.radius_of[e.u], b = dec.radius_of[e.v];
      if (std::min(a, b) == r && std::max(a, b) == r + 1) ++between;
    }
    EXPECT_EQ(between, static_cast<std::size_t>((r + 1) * (r + 2)));
  }
}

TEST(Families, RadialTruncationsAreSymmetricAndMatchProfiles) {
  for (const auto& name : gallery_names()) {
    const Family f = make_family(name, {});
    const int depth = name == "binary_tree" || name == "antitree_geomass" ? 7 : 12;
    const Truncation t = truncate(f, depth);
    const auto dec = sphere_decomposition(t.graph, t.roots);
    EXPECT_TRUE(check_weak_spherical_symmetry(dec).symmetric) << name;
    const auto fromg = profile_from_graph(t.graph, dec);
    const auto exact = family_profile(f);
    for (long r = 0; r < depth; ++r) {
      for (Sequence s : {Sequence::Boundary, Sequence::Measure, Sequence::Killing, Sequence::Size}) {
        EXPECT_LE(testing::rel_err(fromg.at(s, r), exact.at(s, r)), 1e-12) << name << " r=" << r;
      }
    }
    // Degrees recorded for the untruncated graph agree with the profile.
    for (Vertex x = 0; x < t.graph.vertex_count(); ++x) {
      EXPECT_LE(testing::rel_err(t.degree[x], radial_degree(exact, t.level[x])), 1e-12) << name;
    }
  }
}

TEST(Families, Composites) {
  const int r = 9;
  EXPECT_EQ(truncate(make_family("bilateral_mixed", {}), r).graph.vertex_count(), 2u * r + 1);
  EXPECT_EQ(truncate(make_family("pendant_geom", {}), r).graph.vertex_count(), 2u * r + 2);

  const Truncation star = truncate(make_family("star_poly", {}), r);
  EXPECT_EQ(star.graph.vertex_count(), 2u * r + 3);
  std::vector<bool> x2(star.graph.vertex_count(), true);
  for (Vertex x : star.x1) x2[x] = false;
  const auto labels = component_labels(star.graph, x2);
  for (Vertex x = 0; x < labels.size(); ++x) {
    if (x2[x]) {
      EXPECT_EQ(labels[x], labels[star.graph.vertex_count() - 1]);
    }
  }
  EXPECT_THROW(make_family("star", {{"b_hub", "1"}}), ArgumentError);

  const Truncation lad = truncate(make_family("ladder_poly", {}), r);
  for (int k = 0; k <= r; ++k) {
    int rungs = 0;
    for (const auto& e : lad.graph.edges()) {
      if (lad.level[e.u] == k && lad.level[e.v] == k) ++rungs;
    }
    EXPECT_EQ(rungs, 2);
  }
}

TEST(Families, Errors) {
  EXPECT_THROW(make_family("birth_death", {{"q", "1"}}), ArgumentError);
  EXPECT_THROW(make_family("no_such_family", {}), ArgumentError);
  EXPECT_THROW(make_family("birth_death", {{"m", "0"}}), ArgumentError);
  EXPECT_THROW(family_profile(make_family("pendant_geom", {})), PreconditionError);
  EXPECT_THROW(truncate(make_family("binary_tree", {}), 30), ArgumentError);
}

TEST(Families, Ends) {
  const auto ends = family_ends(make_family("bilateral_mixed", {}));
  ASSERT_EQ(ends.size(), 2u);
  // Positive half starts at vertex 1: dB(0) = b(1,2) = 2, m(S_0) = m(1) = 1/2.
  EXPECT_EQ(ends[0].profile.at(Sequence::Boundary, 0), 2.0);
  EXPECT_EQ(ends[0].profile.at(Sequence::Measure, 0), 0.5);
  EXPECT_EQ(ends[1].profile.at(Sequence::Measure, 0), 1.0);
}

}  // namespace
}  // namespace wss
