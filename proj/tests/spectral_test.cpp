#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "walkrank/parallel.hpp"
#include "walkrank/spectral.hpp"

using namespace walkrank;

namespace {

DirectedGraph fig1() { return read_directed_graph(oracle::data_path("fig1.tsv")); }

DirectedGraph directed_cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return DirectedGraph::from_edges(n, edges);
}

std::vector<double> as_vector(const ScoreVector& s) { return {s.begin(), s.end()}; }

std::vector<double> uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

}  // namespace

TEST(PageRank, FiveNodeNetwork) {
  const auto g = fig1();
  const auto h = pagerank(build_transition(g));
  const std::vector<double> expected{0.04, 0.06, 0.07, 0.43, 0.40};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(h[g.labels().at(std::to_string(i + 1))], expected[i], 0.005);
}

TEST(PageRank, ZeroDampingIsUniform) {
  for (const auto& g : {fig1(), oracle::random_directed(17, 0.2, 5)}) {
    PageRankParams params;
    params.alpha = 0.0;
    const auto h = pagerank(build_transition(g), params);
    for (double x : h) EXPECT_EQ(x, 1.0 / static_cast<double>(g.node_count()));
  }
}

TEST(PageRank, DirectedCycleIsUniform) {
  for (double alpha : {0.1, 0.5, 0.85, 0.99}) {
    PageRankParams params;
    params.alpha = alpha;
    const auto h = pagerank(build_transition(directed_cycle(3)), params);
    for (double x : h) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);
  }
}

TEST(PageRank, TwoNodeDanglingGraph) {
  const auto g = DirectedGraph::from_edges(2, {{0, 1}});
  const auto p = build_transition(g);
  const auto h = pagerank(p);
  const auto expected = oracle::pagerank(oracle::transition(g), 0.85, uniform(2));
  EXPECT_NEAR(h[0], expected[0], 1e-12);
  EXPECT_NEAR(h[1], expected[1], 1e-12);
  // Frozen from the oracle.
  EXPECT_NEAR(h[0], 0.350877192982456, 1e-12);
  EXPECT_NEAR(h[1], 0.649122807017544, 1e-12);
}

TEST(PageRank, FullDampingOnFiveNodeNetworkOscillates) {
  PageRankParams params;
  params.alpha = 1.0;
  try {
    pagerank(build_transition(fig1()), params);
    FAIL() << "expected a convergence error";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.iterations(), kDefaultMaxIterations);
    EXPECT_GT(e.residual(), 0.1);
    EXPECT_EQ(e.last_iterate().size(), 5u);
  }
}

TEST(PageRank, ParameterValidation) {
  const auto p = build_transition(fig1());
  PageRankParams params;
  params.alpha = 1.5;
  EXPECT_THROW(pagerank(p, params), DomainError);
  params.alpha = 0.5;
  params.teleport = ScoreVector({0.5, 0.5}, Normalization::sum_one);
  EXPECT_THROW(pagerank(p, params), DomainError);
  params.teleport = ScoreVector({0.2, 0.2, 0.2, 0.2, 0.2}, Normalization::sum_one);
  EXPECT_NO_THROW(pagerank(p, params));
  EXPECT_NEAR(PageRankParams{}.mean_chain_length(), 0.85 / 0.15, 1e-12);
}

TEST(PageRank, SumsToOneAndNonNegative) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto g = oracle::random_directed(2 + seed % 40, 0.1, seed);
    PageRankParams params;
    params.alpha = 0.3 + 0.0125 * static_cast<double>(seed);
    const auto h = pagerank(build_transition(g), params);
    EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), 1.0, 1e-9);
    for (double x : h) EXPECT_GE(x, 0.0);
  }
}

TEST(PageRank, IterativeMatchesDirect) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto p = build_transition(oracle::random_directed(50, 0.08, seed));
    const auto a = pagerank(p);
    const auto b = pagerank_direct(p);
    EXPECT_LT(max_abs_difference(a.values(), b.values()), 1e-10);
  }
}

TEST(PageRank, DirectMatchesOracleWithPersonalization) {
  const auto g = oracle::random_directed(12, 0.25, 77);
  std::vector<double> v(12, 0.0);
  v[3] = 0.7;
  v[9] = 0.3;
  PageRankParams params;
  params.alpha = 0.6;
  params.teleport = ScoreVector(v, Normalization::sum_one);
  const auto h = pagerank_direct(build_transition(g), params);
  EXPECT_LT(oracle::max_abs(as_vector(h), oracle::pagerank(oracle::transition(g), 0.6, v)), 1e-13);
  params.alpha = 0.0;
  EXPECT_LT(oracle::max_abs(as_vector(pagerank_direct(build_transition(g), params)), v), 1e-15);
}

TEST(PageRank, DirectEdgeCases) {
  const auto single = build_transition(DirectedGraph::from_edges(1, {}));
  EXPECT_EQ(pagerank_direct(single)[0], 1.0);
  EXPECT_EQ(pagerank(single)[0], 1.0);
  PageRankParams params;
  params.dense_limit = 4;
  EXPECT_THROW(pagerank_direct(build_transition(fig1()), params), SizeError);
  params.alpha = 1.0;
  params.dense_limit = kDenseSolveLimit;
  EXPECT_THROW(pagerank_direct(build_transition(fig1()), params), DomainError);
}

TEST(PageRank, UndirectedFullDampingIsProportionalToDegree) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    // A triangle on 0-1-2 guarantees an odd cycle.
    auto base = oracle::random_connected(30, 0.1, seed, true);
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    for (auto [s, t] : {std::pair<NodeId, NodeId>{0, 1}, {1, 2}, {0, 2}}) {
      edges.push_back({s, t, 1.0});
      edges.push_back({t, s, 1.0});
    }
    const auto g = DirectedGraph::from_edges(30, edges);
    PageRankParams params;
    params.alpha = 1.0;
    params.max_iterations = 200000;
    const auto h = pagerank(build_transition(g), params);
    for (NodeId v = 0; v < 30; ++v) {
      const double expected = g.out_strength(v) / g.total_weight();
      EXPECT_LT(std::abs(h[v] - expected) / expected, 1e-6);
    }
  }
}

TEST(PageRank, OrderingInvariantUnderWeightScaling) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = oracle::random_directed(30, 0.1, seed);
    const auto a = pagerank(build_transition(g));
    const auto b = pagerank(build_transition(g.scaled(37.5)));
    EXPECT_EQ(ranking(a.values()), ranking(b.values()));
    EXPECT_LT(max_abs_difference(a.values(), b.values()), 1e-12);
  }
}

TEST(PageRank, BucketGainsMassWithDamping) {
  const auto g = fig1();
  const auto p = build_transition(g);
  PageRankParams params;
  params.alpha = 0.5;
  const auto low = pagerank(p, params);
  params.alpha = 0.85;
  const auto high = pagerank(p, params);
  const NodeId four = g.labels().at("4");
  const NodeId five = g.labels().at("5");
  EXPECT_GT(high[four] + high[five], low[four] + low[five]);
}

TEST(PageRank, ThreadCountDoesNotChangeResult) {
  const auto g = oracle::random_directed(3000, 0.002, 4242);
  const auto p = build_transition(g);
  set_thread_count(1);
  const auto one = pagerank(p);
  set_thread_count(4);
  const auto four = pagerank(p);
  set_thread_count(1);
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i], four[i]);
}

TEST(TotalRank, DirectedCycleIsUniform) {
  const auto h = totalrank(build_transition(directed_cycle(3)));
  for (double x : h) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);
}

TEST(TotalRank, SingleNode) {
  EXPECT_NEAR(totalrank(build_transition(DirectedGraph::from_edges(1, {})))[0], 1.0, 1e-15);
}

TEST(TotalRank, MatchesDenseAlphaGrid) {
  const auto g = oracle::random_directed(10, 0.25, 2024);
  const auto p = oracle::transition(g);
  // Composite Simpson rule on 2048 intervals.
  constexpr int kIntervals = 2048;
  const double upper = 1.0 - 1e-6;
  const double step = upper / kIntervals;
  std::vector<double> integral(10, 0.0);
  for (int k = 0; k <= kIntervals; ++k) {
    const double w = (k == 0 || k == kIntervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const auto h = oracle::pagerank(p, k * step, uniform(10));
    for (std::size_t i = 0; i < 10; ++i) integral[i] += w * h[i];
  }
  const double total = std::accumulate(integral.begin(), integral.end(), 0.0);
  for (double& x : integral) x /= total;
  const auto h = totalrank(build_transition(g), 32);
  EXPECT_LT(oracle::max_abs(as_vector(h), integral), 1e-6);
}

TEST(TotalRank, RejectsTooFewPoints) {
  EXPECT_THROW(totalrank(build_transition(fig1()), 1), DomainError);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto rule = gauss_legendre(5, -1.0, 2.0);
  double integral = 0.0;
  for (std::size_t k = 0; k < 5; ++k) integral += rule.weights[k] * std::pow(rule.nodes[k], 9);
  EXPECT_NEAR(integral, (std::pow(2.0, 10) - 1.0) / 10.0, 1e-10);
  const auto one = gauss_legendre(1, 0.0, 4.0);
  EXPECT_NEAR(one.nodes[0], 2.0, 1e-15);
  EXPECT_NEAR(one.weights[0], 4.0, 1e-15);
}

TEST(Hits, SingleEdge) {
  const auto r = hits(DirectedGraph::from_edges(2, {{0, 1}}));
  EXPECT_EQ(r.authority[0], 0.0);
  EXPECT_EQ(r.authority[1], 1.0);
  EXPECT_EQ(r.hub[0], 1.0);
  EXPECT_EQ(r.hub[1], 0.0);
}

TEST(Hits, StarLeavesShareAuthority) {
  std::vector<Edge> edges;
  for (NodeId t = 1; t <= 6; ++t) edges.push_back({0, t});
  const auto r = hits(DirectedGraph::from_edges(7, edges));
  for (NodeId t = 1; t <= 6; ++t) EXPECT_NEAR(r.authority[t], 1.0 / 6.0, 1e-15);
}

TEST(Hits, MatchesDensePowerIterationOracle) {
  const auto g = oracle::random_directed(20, 0.2, 31, false);
  const auto a = oracle::adjacency(g);
  const auto ata = oracle::multiply(oracle::transpose(a), a);
  std::vector<double> x(20, 1.0);
  for (int it = 0; it < 5000; ++it) {
    x = oracle::multiply(ata, x);
    const double norm = std::accumulate(x.begin(), x.end(), 0.0);
    for (double& v : x) v /= norm;
  }
  const auto r = hits(g);
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    dot += x[i] * r.authority[i];
    nx += x[i] * x[i];
    ny += r.authority[i] * r.authority[i];
  }
  EXPECT_GE(dot / std::sqrt(nx * ny), 1.0 - 1e-8);
}

TEST(Hits, AuthorityIsAFixedPoint) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto g = oracle::random_directed(25, 0.15, seed);
    const auto r = hits(g);
    const auto a = oracle::adjacency(g);
    const auto y = oracle::multiply(oracle::multiply(oracle::transpose(a), a), as_vector(r.authority));
    const double lambda = std::accumulate(y.begin(), y.end(), 0.0);
    double residual = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) residual += std::abs(y[i] - lambda * r.authority[i]);
    EXPECT_LT(residual / lambda, 1e-8);
  }
}

TEST(Hits, NeedsAnEdge) { EXPECT_THROW(hits(DirectedGraph::from_edges(3, {})), DomainError); }

TEST(Eigenvector, CompleteGraphIsUniform) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 4; ++i) {
    for (NodeId j = i + 1; j < 4; ++j) edges.push_back({i, j});
  }
  const auto x = eigenvector_centrality(DirectedGraph::undirected_from_edges(4, edges));
  for (double v : x) EXPECT_NEAR(v, 0.25, 1e-12);
}

TEST(Eigenvector, CentralityNetworkRow) {
  ParseOptions options;
  options.undirected = true;
  const auto g = read_directed_graph(oracle::data_path("centrality.tsv"), options);
  const auto x = eigenvector_centrality(g).renormalized(Normalization::mean_one);
  const std::vector<double> expected{2.03, 0.62, 0.52, 1.84, 0.12};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(x[g.labels().at(std::to_string(i + 1))], expected[i], 0.01);
}

TEST(Eigenvector, StarCenterToLeafRatio) {
  for (std::size_t k : {3u, 4u, 9u}) {
    std::vector<Edge> edges;
    for (NodeId t = 1; t <= k; ++t) edges.push_back({0, t});
    const auto x = eigenvector_centrality(DirectedGraph::undirected_from_edges(k + 1, edges));
    EXPECT_NEAR(x[0] / x[1], std::sqrt(static_cast<double>(k)), 1e-8);
  }
}

TEST(CiteRank, EqualAgesGiveUniformTeleport) {
  const auto p = build_transition(fig1());
  const std::vector<double> ages(5, 3.0);
  const auto a = citerank(p, ages, 2.0, 0.85);
  EXPECT_LT(max_abs_difference(a.values(), pagerank(p).values()), 1e-15);
}

TEST(CiteRank, LongDecayTimeRecoversPageRank) {
  const auto p = build_transition(fig1());
  const std::vector<double> ages{0, 1, 2, 3, 4};
  const auto a = citerank(p, ages, 1e12, 0.85);
  EXPECT_LT(max_abs_difference(a.values(), pagerank(p).values()), 1e-9);
}

TEST(CiteRank, ChainMatchesLinearSolveOracle) {
  const auto g = DirectedGraph::from_edges(3, {{1, 0}, {2, 1}});
  const std::vector<double> ages{2, 1, 0};
  std::vector<double> v(3);
  for (std::size_t i = 0; i < 3; ++i) v[i] = std::exp(-ages[i]);
  const double total = v[0] + v[1] + v[2];
  for (double& x : v) x /= total;
  const auto expected = oracle::pagerank(oracle::transition(g), 0.5, v);
  EXPECT_LT(oracle::max_abs(as_vector(citerank(build_transition(g), ages, 1.0, 0.5)), expected), 1e-10);
}

TEST(CiteRank, InputValidation) {
  const auto p = build_transition(fig1());
  EXPECT_THROW(citerank(p, std::vector<double>{1, 2, 3, 4, 5}, 0.0, 0.5), DomainError);
  EXPECT_THROW(citerank(p, std::vector<double>{1, 2, -3, 4, 5}, 1.0, 0.5), DomainError);
  EXPECT_THROW(citerank(p, std::vector<double>{1, 2}, 1.0, 0.5), DomainError);
  // Ages far beyond exp underflow still give a valid teleport.
  const auto v = citerank_teleport(std::vector<double>{1e6, 1e6 + 1, 1e6 + 2}, 1.0);
  EXPECT_NEAR(v[0], 1.0 / (1.0 + std::exp(-1.0) + std::exp(-2.0)), 1e-15);
}

TEST(TrustedTeleport, Examples) {
  EXPECT_EQ(as_vector(trusted_teleport({0}, 3)), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(as_vector(trusted_teleport({0, 2}, 4)), (std::vector<double>{0.5, 0, 0.5, 0}));
  const auto all = trusted_teleport({0, 1, 2, 3, 4}, 5);
  PageRankParams params;
  params.teleport = all;
  const auto p = build_transition(fig1());
  EXPECT_LT(max_abs_difference(pagerank(p, params).values(), pagerank(p).values()), 1e-15);
  EXPECT_THROW(trusted_teleport({}, 3), DomainError);
  EXPECT_THROW(trusted_teleport({3}, 3), DomainError);
}

TEST(GroundNodeRank, DirectedCycleIsUniform) {
  for (double x : ground_node_rank(directed_cycle(3))) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);
}

TEST(GroundNodeRank, SingleNode) {
  EXPECT_NEAR(ground_node_rank(DirectedGraph::from_edges(1, {}))[0], 1.0, 1e-15);
}

TEST(GroundNodeRank, MatchesMarginalizedStationaryOracle) {
  const auto g = DirectedGraph::from_edges(
      5, {{0, 1}, {1, 2}, {2, 0}, {2, 3, 2.0}, {3, 4}, {0, 4, 0.5}});
  const auto pi = oracle::stationary(oracle::transition(add_ground_node(g)));
  std::vector<double> expected(pi.begin(), pi.begin() + 5);
  const double total = std::accumulate(expected.begin(), expected.end(), 0.0);
  for (double& x : expected) x /= total;
  EXPECT_LT(oracle::max_abs(as_vector(ground_node_rank(g)), expected), 1e-10);
}

TEST(GroundNodeRank, EdgelessGraphIsUniform) {
  for (double x : ground_node_rank(DirectedGraph::from_edges(4, {}))) EXPECT_EQ(x, 0.25);
}
