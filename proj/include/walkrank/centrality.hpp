#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "walkrank/graph.hpp"
#include "walkrank/scores.hpp"

namespace walkrank {

/// In-degree (degree for undirected graphs), mean-one.
ScoreVector degree_centrality(const DirectedGraph& graph);

/// Fraction of shortest paths through each node over all node pairs, mean-one.
///
/// With `count_endpoints` a path also counts for its two end nodes. Distances
/// are hop counts; undirected graphs count each unordered pair once.
ScoreVector shortest_path_betweenness(const DirectedGraph& graph, bool count_endpoints = true);

/// Current-flow betweenness: unit current between every pair s < t, node
/// throughflow averaged over pairs, mean-one. Needs an undirected connected
/// graph.
ScoreVector random_walk_betweenness(const DirectedGraph& graph);

enum class ReturnTimeConversion {
  /// centrality = 1 / sigma
  inverse_deviation,
  /// centrality = 1 / sigma^2
  inverse_variance,
};

std::string_view to_string(ReturnTimeConversion conversion);
ReturnTimeConversion parse_return_time_conversion(std::string_view text);

struct SecondOrderParams {
  std::uint64_t walk_steps = 10'000'000;
  /// Defaults to 10 N.
  std::optional<std::uint64_t> burn_in;
  /// Required; there is no default seed.
  std::optional<std::uint64_t> rng_seed;
  std::size_t min_returns = 50;
  ReturnTimeConversion conversion = ReturnTimeConversion::inverse_deviation;
  /// Start node of the walk.
  NodeId start = 0;

  std::uint64_t effective_burn_in(std::size_t n) const { return burn_in.value_or(10 * n); }
  void validate(std::size_t n) const;
};

/// Metropolis-Hastings walk whose stationary distribution is uniform: propose
/// a uniform neighbor j of i and accept with probability min(1, k_i / k_j).
/// Edge weights are ignored.
class UnbiasedWalk {
 public:
  UnbiasedWalk(const DirectedGraph& graph, std::uint64_t seed, NodeId start = 0);

  /// Advances one time step (a rejected proposal also takes a step).
  NodeId step();
  NodeId position() const noexcept { return position_; }

 private:
  const DirectedGraph* graph_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  NodeId position_;
};

struct ReturnTimeStats {
  std::vector<std::uint64_t> returns;
  std::vector<double> mean;
  /// Unbiased sample standard deviation.
  std::vector<double> deviation;
};

/// Return-time statistics of one seeded walk, after burn-in.
ReturnTimeStats return_time_stats(const DirectedGraph& graph, const SecondOrderParams& params);

/// Inverse spread of return times of the unbiased walk, mean-one.
ScoreVector second_order_centrality(const DirectedGraph& graph, const SecondOrderParams& params);

}  // namespace walkrank
