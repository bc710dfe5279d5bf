#include <gtest/gtest.h>
#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <numeric>

#include "oracles.hpp"
#include "walkrank/bipartite.hpp"
#include "walkrank/graph.hpp"
#include "walkrank/io.hpp"
#include "walkrank/transition.hpp"

using namespace walkrank;

namespace {

double row_total(const TransitionMatrix& p, NodeId i) {
  double total = 0.0;
  for (NodeId j = 0; j < p.size(); ++j) total += p.entry(i, j);
  return total;
}

}  // namespace

TEST(LoadDirectedGraph, DefaultWeightIsOne) {
  const auto g = load_directed_graph("a\tb\nb\ta");
  EXPECT_EQ(g.node_count(), 2u);
  ASSERT_EQ(g.edge_count(), 2u);
  for (const auto& e : g.edges()) EXPECT_EQ(e.weight, 1.0);
  EXPECT_EQ(g.label(0), "a");
  EXPECT_EQ(g.label(1), "b");
}

TEST(LoadDirectedGraph, ExplicitWeight) {
  const auto g = load_directed_graph("a\tb\t2.5");
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges()[0].weight, 2.5);
}

TEST(LoadDirectedGraph, NegativeWeightIsDomainError) {
  EXPECT_THROW(load_directed_graph("a\tb\t-1"), DomainError);
}

TEST(LoadDirectedGraph, MalformedLineReportsLineNumber) {
  try {
    load_directed_graph("# header\na\tb\nlonely\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(load_directed_graph("a\tb\tnot-a-number"), ParseError);
  EXPECT_THROW(load_directed_graph("a\tb\t1\t2"), ParseError);
}

TEST(LoadDirectedGraph, CommentsDuplicatesAndZeroWeights) {
  const auto g = load_directed_graph("# c\na\tb\t1\n\na\tb\t2\nb\tc\t0\n");
  EXPECT_EQ(g.node_count(), 3u);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.weight(0, 1), 3.0);
  EXPECT_EQ(g.weight(1, 2), 0.0);
}

TEST(LoadDirectedGraph, UndirectedFlagMirrors) {
  ParseOptions options;
  options.undirected = true;
  const auto g = load_directed_graph("a\tb\t2\nb\tc", options);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_TRUE(g.is_symmetric());
  EXPECT_EQ(g.weight(1, 0), 2.0);
}

TEST(LoadDirectedGraph, ReadsGzipTransparently) {
  const auto path = (std::filesystem::temp_directory_path() / "walkrank_graph_test.tsv.gz").string();
  gzFile f = gzopen(path.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  const std::string text = "x\ty\t4\ny\tz\n";
  gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
  gzclose(f);
  const auto g = read_directed_graph(path);
  std::remove(path.c_str());
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.weight(0, 1), 4.0);
}

TEST(LoadBipartite, UserDegree) {
  const auto b = load_bipartite("u1\ti1\n u1\ti2");
  EXPECT_EQ(b.user_count(), 1u);
  EXPECT_EQ(b.user_degree(0), 2u);
}

TEST(LoadBipartite, RatingAndTimestamp) {
  const auto b = load_bipartite("u1\ti1\t4.0");
  EXPECT_EQ(b.rating(0, 0), 4.0);
  EXPECT_TRUE(b.has_ratings());
  const auto t = load_bipartite("u1\ti1\t4.0\t100");
  EXPECT_EQ(t.entries()[0].timestamp, 100);
}

TEST(LoadBipartite, DuplicateKeepsLastAndWarns) {
  std::vector<std::string> warnings;
  const auto b = load_bipartite("u\ti\t1\nu\tj\t2\nu\ti\t5",
                                [&](const std::string& m) { warnings.push_back(m); });
  EXPECT_EQ(b.entry_count(), 2u);
  EXPECT_EQ(b.rating(0, 0), 5.0);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(LoadBipartite, MalformedLine) {
  EXPECT_THROW(load_bipartite("u1\n"), ParseError);
  EXPECT_THROW(load_bipartite("u1\ti1\tfive"), ParseError);
}

TEST(BuildTransition, UniformDanglingRow) {
  const auto g = DirectedGraph::from_edges(2, {{0, 1}});
  const auto p = build_transition(g, DanglingPolicy::uniform);
  EXPECT_EQ(p.entry(0, 0), 0.0);
  EXPECT_EQ(p.entry(0, 1), 1.0);
  EXPECT_EQ(p.entry(1, 0), 0.5);
  EXPECT_EQ(p.entry(1, 1), 0.5);
  EXPECT_EQ(p.dangling_rows(), std::vector<NodeId>{1});
}

TEST(BuildTransition, RowNormalization) {
  const auto g = DirectedGraph::from_edges(3, {{0, 1, 2.0}, {0, 2, 6.0}});
  const auto p = build_transition(g);
  EXPECT_EQ(p.entry(0, 1), 0.25);
  EXPECT_EQ(p.entry(0, 2), 0.75);
}

TEST(BuildTransition, ErrorPolicyListsDanglingNodes) {
  const auto g = DirectedGraph::from_edges(2, {{0, 1}});
  try {
    build_transition(g, DanglingPolicy::error);
    FAIL() << "expected a dangling-node error";
  } catch (const DanglingNodeError& e) {
    EXPECT_EQ(e.nodes(), std::vector<NodeId>{1});
  }
}

TEST(BuildTransition, SelfLoopPolicy) {
  const auto g = DirectedGraph::from_edges(2, {{0, 1}});
  const auto p = build_transition(g, DanglingPolicy::self_loop);
  EXPECT_EQ(p.entry(1, 1), 1.0);
  EXPECT_EQ(p.entry(1, 0), 0.0);
}

TEST(BuildTransition, EmptyGraphRejected) {
  EXPECT_THROW(build_transition(DirectedGraph{}), DomainError);
}

TEST(BuildTransition, RowsAreStochasticOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto g = oracle::random_directed(5 + seed % 30, 0.15, seed);
    for (auto policy : {DanglingPolicy::uniform, DanglingPolicy::self_loop}) {
      const auto p = build_transition(g, policy);
      for (NodeId i = 0; i < p.size(); ++i) {
        EXPECT_NEAR(row_total(p, i), 1.0, 1e-12);
        EXPECT_NEAR(p.row_sum(i), 1.0, 1e-12);
        for (NodeId j = 0; j < p.size(); ++j) {
          EXPECT_GE(p.entry(i, j), 0.0);
          EXPECT_LE(p.entry(i, j), 1.0);
        }
      }
    }
  }
}

TEST(BuildTransition, ProductsMatchDenseMatrix) {
  const auto g = oracle::random_directed(25, 0.1, 99);
  const auto p = build_transition(g);
  const auto dense = oracle::transition(g);
  std::vector<double> x(25), y(25);
  std::iota(x.begin(), x.end(), 1.0);
  p.apply_transpose(x, y);
  const auto expected = oracle::multiply(oracle::transpose(dense), x);
  EXPECT_LT(oracle::max_abs(y, expected), 1e-12);
  p.apply(x, y);
  EXPECT_LT(oracle::max_abs(y, oracle::multiply(dense, x)), 1e-12);
}

TEST(HeatOperator, StarCenterTakesNeighborMean) {
  ParseOptions options;
  options.undirected = true;
  const auto g = read_directed_graph(oracle::data_path("heat_star.tsv"), options);
  const auto& labels = g.labels();
  const NodeId c = labels.at("c");
  std::vector<double> t(g.node_count(), 0.0);
  const double x = 0.9, y = 0.4, z = 0.2;
  t[labels.at("x")] = x;
  t[labels.at("y")] = y;
  t[labels.at("z")] = z;
  const auto heat = build_heat_operator(g).step(t);
  EXPECT_NEAR(heat[c], (x + y + z) / 3.0, 1e-15);

  // The random walk weighs the same neighbors by 1/k.
  std::vector<double> walk(g.node_count());
  build_transition(g).apply_transpose(t, walk);
  EXPECT_NEAR(walk[c], x / 5 + y / 4 + z / 3, 1e-15);
}

TEST(HeatOperator, RegularGraphMatchesWalk) {
  const auto g = DirectedGraph::undirected_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  const auto heat = build_heat_operator(g);
  const auto walk = build_transition(g);
  for (NodeId i = 0; i < 5; ++i) {
    for (NodeId j = 0; j < 5; ++j) EXPECT_EQ(heat.entry(i, j), walk.entry(i, j));
  }
}

TEST(HeatOperator, PathCenterIsLeafMean) {
  const auto g = DirectedGraph::undirected_from_edges(3, {{0, 1}, {1, 2}});
  const std::vector<double> t{2.0, 7.0, 5.0};
  EXPECT_DOUBLE_EQ(build_heat_operator(g).step(t)[1], 3.5);
}

TEST(HeatOperator, ZeroInStrengthColumnWarns) {
  const auto g = DirectedGraph::from_edges(2, {{0, 1}});
  std::vector<std::string> warnings;
  const auto op = build_heat_operator(g, [&](const std::string& m) { warnings.push_back(m); });
  EXPECT_EQ(op.zero_columns(), std::vector<NodeId>{0});
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_EQ(op.entry(1, 0), 0.0);
}

TEST(GroundNode, SingleNode) {
  const auto g = add_ground_node(DirectedGraph::from_edges(1, {}));
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.weight(0, 1), 1.0);
  EXPECT_EQ(g.weight(1, 0), 1.0);
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(GroundNode, EmptyGraphGetsTwoEdgesPerNode) {
  const auto g = add_ground_node(DirectedGraph::from_edges(3, {}));
  EXPECT_EQ(g.edge_count(), 6u);
}

TEST(GroundNode, JumpProbabilityWithManyLinks) {
  std::vector<Edge> edges;
  for (NodeId t = 1; t <= 99; ++t) edges.push_back({0, t});
  const auto g = add_ground_node(DirectedGraph::from_edges(100, edges));
  const auto p = build_transition(g);
  EXPECT_DOUBLE_EQ(p.entry(0, 100), 1.0 / 100.0);
}

TEST(GroundNode, KeepsOriginalEdgesAndLabels) {
  const auto g = load_directed_graph("a\tb\t3\nb\tc");
  const auto aug = add_ground_node(g);
  EXPECT_EQ(aug.weight(0, 1), 3.0);
  EXPECT_EQ(aug.weight(1, 2), 1.0);
  EXPECT_EQ(aug.label(0), "a");
  EXPECT_NE(aug.label(3), "a");
}

TEST(GroundNode, AugmentedWalkIsIrreducible) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto aug = add_ground_node(oracle::random_directed(12, 0.05, seed));
    for (NodeId v = 0; v < aug.node_count(); ++v) {
      const auto reach = reachable_from(aug, v);
      EXPECT_TRUE(std::all_of(reach.begin(), reach.end(), [](bool b) { return b; }));
    }
  }
}

TEST(Serialize, RoundTripsRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto g = oracle::random_directed(3 + seed % 17, 0.2, seed);
    // Relabel through text so that labels are non-numeric strings.
    const auto text = serialize(g);
    const auto once = load_directed_graph(text);
    const auto twice = load_directed_graph(serialize(once));
    ASSERT_EQ(once.node_count(), g.node_count());
    ASSERT_EQ(twice.node_count(), once.node_count());
    for (NodeId v = 0; v < once.node_count(); ++v) {
      EXPECT_EQ(once.label(v), g.label(v));
      EXPECT_EQ(twice.label(v), once.label(v));
    }
    ASSERT_EQ(once.edge_count(), g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      EXPECT_EQ(once.edges()[k], g.edges()[k]);
      EXPECT_EQ(twice.edges()[k], g.edges()[k]);
    }
  }
}

TEST(Serialize, KeepsIsolatedNodesAndOrder) {
  std::vector<Edge> edges{{3, 1, 0.1}, {1, 3, 1e-300}};
  LabelIndex labels;
  for (const char* name : {"zeta", "b c", "alpha", "q"}) labels.intern(name);
  const auto g = DirectedGraph::from_edges(5 - 1, edges, labels);
  const auto back = load_directed_graph(serialize(g));
  ASSERT_EQ(back.node_count(), 4u);
  for (NodeId v = 0; v < 4; ++v) EXPECT_EQ(back.label(v), g.label(v));
  EXPECT_EQ(back.weight(3, 1), 0.1);
  EXPECT_EQ(back.weight(1, 3), 1e-300);
}
