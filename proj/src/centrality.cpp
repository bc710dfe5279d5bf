#include "walkrank/centrality.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "walkrank/parallel.hpp"
#include "walkrank/similarity.hpp"

namespace walkrank {
namespace {

void require_undirected(const DirectedGraph& graph, std::string_view measure) {
  if (!graph.is_symmetric()) {
    throw DomainError(std::string(measure) + " is defined for undirected graphs only");
  }
}

void require_connected(const DirectedGraph& graph, std::string_view measure) {
  if (!graph.is_weakly_connected()) {
    throw ConnectivityError(std::string(measure) + " needs a connected graph");
  }
}

}  // namespace

ScoreVector degree_centrality(const DirectedGraph& graph) {
  std::vector<double> degree(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) degree[v] = static_cast<double>(graph.in_degree(v));
  return ScoreVector::normalized(std::move(degree), Normalization::mean_one);
}

ScoreVector shortest_path_betweenness(const DirectedGraph& graph, bool count_endpoints) {
  const std::size_t n = graph.node_count();
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<double> centrality(n, 0.0);
  std::vector<std::size_t> distance(n);
  std::vector<double> paths(n);
  std::vector<double> dependency(n);
  std::vector<std::vector<NodeId>> parents(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    std::fill(distance.begin(), distance.end(), kUnseen);
    std::fill(paths.begin(), paths.end(), 0.0);
    std::fill(dependency.begin(), dependency.end(), 0.0);
    for (auto& p : parents) p.clear();
    order.clear();

    distance[s] = 0;
    paths[s] = 1.0;
    std::deque<NodeId> queue{s};
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (const auto& e : graph.out_edges(v)) {
        const NodeId w = e.target;
        if (distance[w] == kUnseen) {
          distance[w] = distance[v] + 1;
          queue.push_back(w);
        }
        if (distance[w] == distance[v] + 1) {
          paths[w] += paths[v];
          parents[w].push_back(v);
        }
      }
    }

    if (count_endpoints) centrality[s] += static_cast<double>(order.size() - 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : parents[w]) dependency[v] += paths[v] / paths[w] * (1.0 + dependency[w]);
      if (w != s) centrality[w] += dependency[w] + (count_endpoints ? 1.0 : 0.0);
    }
  }
  if (graph.is_symmetric()) {
    for (double& c : centrality) c *= 0.5;
  }
  return ScoreVector::normalized(std::move(centrality), Normalization::mean_one);
}

ScoreVector random_walk_betweenness(const DirectedGraph& graph) {
  require_undirected(graph, "random-walk betweenness");
  require_connected(graph, "random-walk betweenness");
  const std::size_t n = graph.node_count();
  if (n < 2) return ScoreVector(std::vector<double>(n, 1.0), Normalization::mean_one);

  const Eigen::MatrixXd t = laplacian_pseudoinverse(graph);
  const auto at = [&](NodeId i, NodeId j) {
    return t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  std::vector<double> flow(n, 0.0);
  // Each node accumulates over all pairs on its own, so the result does not
  // depend on the worker count.
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (NodeId k = begin; k < end; ++k) {
      double total = static_cast<double>(n - 1);  // pairs with k as an end
      for (NodeId s = 0; s < n; ++s) {
        if (s == k) continue;
        for (NodeId u = s + 1; u < n; ++u) {
          if (u == k) continue;
          const double vk = at(k, s) - at(k, u);
          double through = 0.0;
          for (const auto& e : graph.out_edges(k)) {
            through += e.weight * std::abs(vk - at(e.target, s) + at(e.target, u));
          }
          total += 0.5 * through;
        }
      }
      flow[k] = total;
    }
  }, 1);
  return ScoreVector::normalized(std::move(flow), Normalization::mean_one);
}

std::string_view to_string(ReturnTimeConversion conversion) {
  return conversion == ReturnTimeConversion::inverse_variance ? "inverse-variance"
                                                              : "inverse-deviation";
}

ReturnTimeConversion parse_return_time_conversion(std::string_view text) {
  if (text == "inverse-deviation") return ReturnTimeConversion::inverse_deviation;
  if (text == "inverse-variance") return ReturnTimeConversion::inverse_variance;
  throw DomainError("unknown return-time conversion '" + std::string(text) + "'");
}

void SecondOrderParams::validate(std::size_t n) const {
  if (!rng_seed) throw DomainError("second-order centrality needs an explicit seed");
  if (min_returns < 10) throw DomainError("min_returns must be at least 10");
  if (walk_steps <= effective_burn_in(n)) throw DomainError("walk_steps must exceed burn_in");
  if (start >= n) throw DomainError("walk start node out of range");
}

UnbiasedWalk::UnbiasedWalk(const DirectedGraph& graph, std::uint64_t seed, NodeId start)
    : graph_(&graph), rng_(seed), position_(start) {
  if (start >= graph.node_count()) throw DomainError("walk start node out of range");
}

NodeId UnbiasedWalk::step() {
  const auto neighbors = graph_->out_edges(position_);
  if (neighbors.empty()) return position_;
  std::uniform_int_distribution<std::size_t> pick(0, neighbors.size() - 1);
  const NodeId proposal = neighbors[pick(rng_)].target;
  const auto k_here = static_cast<double>(neighbors.size());
  const auto k_there = static_cast<double>(graph_->out_degree(proposal));
  if (k_there <= k_here || unit_(rng_) < k_here / k_there) position_ = proposal;
  return position_;
}

ReturnTimeStats return_time_stats(const DirectedGraph& graph, const SecondOrderParams& params) {
  const std::size_t n = graph.node_count();
  params.validate(n);
  constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

  UnbiasedWalk walk(graph, *params.rng_seed, params.start);
  const std::uint64_t burn_in = params.effective_burn_in(n);
  for (std::uint64_t t = 0; t < burn_in; ++t) walk.step();

  ReturnTimeStats stats{std::vector<std::uint64_t>(n, 0), std::vector<double>(n, 0.0),
                        std::vector<double>(n, 0.0)};
  std::vector<double> m2(n, 0.0);
  std::vector<std::uint64_t> last(n, kNever);
  last[walk.position()] = burn_in;
  for (std::uint64_t t = burn_in + 1; t <= params.walk_steps; ++t) {
    const NodeId v = walk.step();
    if (last[v] != kNever) {
      const auto gap = static_cast<double>(t - last[v]);
      const auto count = ++stats.returns[v];
      const double delta = gap - stats.mean[v];
      stats.mean[v] += delta / static_cast<double>(count);
      m2[v] += delta * (gap - stats.mean[v]);
    }
    last[v] = t;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (stats.returns[v] > 1) {
      stats.deviation[v] = std::sqrt(m2[v] / static_cast<double>(stats.returns[v] - 1));
    }
  }
  return stats;
}

ScoreVector second_order_centrality(const DirectedGraph& graph, const SecondOrderParams& params) {
  require_undirected(graph, "second-order centrality");
  if (graph.node_count() < 3) throw DomainError("second-order centrality needs at least 3 nodes");
  require_connected(graph, "second-order centrality");

  const auto stats = return_time_stats(graph, params);
  const std::size_t n = graph.node_count();
  std::vector<NodeId> short_of_samples;
  for (NodeId v = 0; v < n; ++v) {
    if (stats.returns[v] < params.min_returns) short_of_samples.push_back(v);
  }
  if (!short_of_samples.empty()) {
    throw InsufficientSamplesError(std::move(short_of_samples), params.min_returns);
  }
  std::vector<double> centrality(n);
  for (NodeId v = 0; v < n; ++v) {
    const double sigma = stats.deviation[v];
    if (!(sigma > 0.0)) {
      throw DomainError("return times of node " + std::to_string(v) + " have zero spread");
    }
    centrality[v] = params.conversion == ReturnTimeConversion::inverse_variance
                        ? 1.0 / (sigma * sigma)
                        : 1.0 / sigma;
  }
  return ScoreVector::normalized(std::move(centrality), Normalization::mean_one);
}

}  // namespace walkrank
