#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "test_util.hpp"
#include "wss/graph.hpp"
#include "wss/graph_io.hpp"

namespace wss {
namespace {

WeightedGraph path(std::size_t n, double b = 1.0, double m = 1.0) {
  GraphBuilder gb;
  for (std::size_t i = 0; i < n; ++i) gb.add_vertex(m);
  for (std::size_t i = 0; i + 1 < n; ++i) gb.add_edge(i, i + 1, b);
  return std::move(gb).build();
}

WeightedGraph single(double m, double c) { return WeightedGraph({m}, {c}, {}); }

TEST(Laplacian, ConstantsAreHarmonic) {
  std::mt19937_64 rng(1);
  const auto g = testing::random_graph(rng, 12, 0.3, false);
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    EXPECT_NEAR(apply_laplacian(g, VertexFunction(12, 1.0), x), 0.0, 1e-14);
  }
}

TEST(Laplacian, UnitEdge) {
  const auto g = path(2);
  EXPECT_DOUBLE_EQ(apply_laplacian(g, {0.0, 1.0}, 0), -1.0);
  EXPECT_DOUBLE_EQ(apply_laplacian(g, {0.0, 1.0}, 1), 1.0);
}

TEST(Laplacian, KillingOnly) { EXPECT_DOUBLE_EQ(apply_laplacian(single(1, 2), {3}, 0), 6.0); }

TEST(Laplacian, InvalidVertex) { EXPECT_THROW(apply_laplacian(path(2), {0, 0}, 5), ArgumentError); }

TEST(Energy, Examples) {
  EXPECT_DOUBLE_EQ(energy(path(3), {2, 2, 2}), 0.0);
  EXPECT_DOUBLE_EQ(energy(path(3), {0, 1, 0}), 2.0);
  EXPECT_DOUBLE_EQ(energy(single(1, 2), {3}), 18.0);
}

TEST(FormNorm, Examples) {
  EXPECT_DOUBLE_EQ(form_norm_sq(path(2), {0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(form_norm_sq(single(1, 0), {1}), 1.0);
  EXPECT_DOUBLE_EQ(form_norm_sq(path(2), {1, 0}), 2.0);
}

TEST(WeightedDegree, Examples) {
  EXPECT_DOUBLE_EQ(weighted_degree(single(1, 0), 0), 0.0);
  GraphBuilder star;
  for (int i = 0; i < 4; ++i) star.add_vertex(1.0);
  for (Vertex i = 1; i < 4; ++i) star.add_edge(0, i, 1.0);
  EXPECT_DOUBLE_EQ(weighted_degree(std::move(star).build(), 0), 3.0);
  const WeightedGraph leaf({0.5, 1.0}, {1.0, 0.0}, {{0, 1, 2.0}});
  EXPECT_DOUBLE_EQ(weighted_degree(leaf, 0), 6.0);
}

TEST(Construction, Validation) {
  EXPECT_THROW(WeightedGraph({1.0, 0.0}, {0, 0}, {}), ArgumentError);
  EXPECT_THROW(WeightedGraph({1.0, 1.0}, {0, -1}, {}), ArgumentError);
  EXPECT_THROW(WeightedGraph({1.0, 1.0}, {0, 0}, {{0, 1, 0.0}}), ArgumentError);
  EXPECT_THROW(WeightedGraph({1.0, 1.0}, {0, 0}, {{0, 0, 1.0}}), ArgumentError);
  EXPECT_THROW(WeightedGraph({1.0, 1.0}, {0, 0}, {{0, 2, 1.0}}), ArgumentError);
  EXPECT_THROW(WeightedGraph({1.0, 1.0}, {0, 0}, {{0, 1, 1.0}, {1, 0, 2.0}}), ArgumentError);
}

TEST(Construction, SymmetricStorage) {
  const WeightedGraph g({1.0, 1.0, 1.0}, {0, 0, 0}, {{1, 0, 2.0}, {0, 1, 2.0}, {2, 1, 0.5}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 0), 2.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(g.weight(0, 2), 0.0);
  for (const auto& e : g.edges()) EXPECT_LT(e.u, e.v);
}

TEST(Properties, GreenIdentity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 20;
    const auto g = testing::random_graph(rng, n);
    const auto f = testing::random_function(rng, n);
    const auto h = testing::random_function(rng, n);
    const double q = energy(g, f, h);
    EXPECT_LE(testing::rel_err(q, inner_product(g, laplacian(g, f), h)), 1e-12);
    EXPECT_LE(testing::rel_err(q, inner_product(g, f, laplacian(g, h))), 1e-12);
  }
}

TEST(Properties, EnergyNonnegativeAndKernel) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 15;
    const auto g = testing::random_graph(rng, n, 0.3, false);
    EXPECT_GE(energy(g, testing::random_function(rng, n)), 0.0);
    VertexFunction f(n, 0.0);
    f[n - 1] = 1.0;
    EXPECT_GT(energy(g, f), 0.0);  // connected, c = 0: only constants have zero energy
  }
}

TEST(Components, MaskAndConnectivity) {
  const WeightedGraph g({1, 1, 1, 1}, {0, 0, 0, 0}, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_FALSE(is_connected(g));
  const auto labels = component_labels(g);
  EXPECT_EQ(labels[0], labels[1]);
  EXPECT_NE(labels[0], labels[2]);
  const auto masked = component_labels(path(4), {true, false, true, true});
  EXPECT_EQ(masked[1], -1);
  EXPECT_NE(masked[0], masked[2]);
  EXPECT_EQ(masked[2], masked[3]);
}

TEST(GraphIO, RoundTrip) {
  std::mt19937_64 rng(3);
  const auto g = testing::random_graph(rng, 9);
  std::stringstream ss;
  write_graph(ss, g);
  const auto h = read_graph(ss);
  ASSERT_EQ(h.vertex_count(), g.vertex_count());
  ASSERT_EQ(h.edge_count(), g.edge_count());
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    EXPECT_EQ(h.measure(x), g.measure(x));
    EXPECT_EQ(h.killing(x), g.killing(x));
  }
  for (const auto& e : g.edges()) EXPECT_EQ(h.weight(e.u, e.v), e.weight);
}

TEST(GraphIO, Errors) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_graph(in);
  };
  EXPECT_NO_THROW(parse("# two vertices\nV 0 1 0\nV 1 2 0.5  # comment\nE 0 1 3\n"));
  EXPECT_THROW(parse("V 0 1 0\nV 2 1 0\n"), ParseError);
  EXPECT_THROW(parse("V 0 1 0\nV 0 1 0\n"), ParseError);
  EXPECT_THROW(parse("V 0 -1 0\n"), ParseError);
  EXPECT_THROW(parse("V 0 1 0\nE 0 1 1\n"), ParseError);
  EXPECT_THROW(parse("X 0\n"), ParseError);
  try {
    parse("V 0 1 0\nV 1 1 0\nE 0 1 abc\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

}  // namespace
}  // namespace wss
