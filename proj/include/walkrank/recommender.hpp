#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "walkrank/bipartite.hpp"
#include "walkrank/graph.hpp"
#include "walkrank/scores.hpp"
#include "walkrank/similarity.hpp"

namespace walkrank {

struct RecommendationList {
  /// Absent for lists not tied to a user (temperature recommendations).
  std::optional<NodeId> user;
  /// (item, score) by descending score, ties by ascending item id.
  std::vector<std::pair<NodeId, double>> items;
  std::set<NodeId> excluded;
};

struct HybridParams {
  /// 1 recovers ProbS, 0 recovers HeatS.
  double lambda = 0.5;
  /// Initial resource on collected item a is k_a^theta.
  double theta = 0.0;

  void validate() const;
};

/// Resource placed on each item before spreading: k_a^theta on the user's
/// items, 0 elsewhere.
std::vector<double> initial_resource(const BipartiteGraph& graph, NodeId user, double theta = 0.0);

/// Mass-conserving spreading item -> user -> item. Collected items keep
/// their scores; top_n removes them.
ScoreVector probs_scores(const BipartiteGraph& graph, NodeId user, double theta = 0.0);

/// Averaging spreading: each item's score is the mean over its users of the
/// mean resource of their items.
ScoreVector heats_scores(const BipartiteGraph& graph, NodeId user);

/// W_ab = k_a^(lambda-1) k_b^(-lambda) sum_i A_ia A_ib / k_i applied to the
/// theta-weighted resource. Items nobody collected score 0.
ScoreVector hybrid_scores(const BipartiteGraph& graph, NodeId user, const HybridParams& params);

/// mu_i + sum_j s_ij (r_ja - mu_j) / sum_j |s_ij| over the other users j who
/// rated `item`. Empty when nobody else rated it or all similarities are zero;
/// callers then fall back to mu_i.
std::optional<double> predict_rating(const BipartiteGraph& graph, const SimilarityMatrix& users,
                                     NodeId user, NodeId item);

/// Heat equilibrium with liked items at 1 and disliked items at 0; the free
/// items ranked by temperature.
RecommendationList temperature_recommend(const DirectedGraph& item_graph,
                                         const std::set<NodeId>& liked,
                                         const std::set<NodeId>& disliked);

/// Highest `n` scores outside `exclude`.
RecommendationList top_n(const ScoreVector& scores, const std::set<NodeId>& exclude, std::size_t n,
                         std::optional<NodeId> user = std::nullopt);

/// Item scores for `user` computed on the training graph.
using Scorer = std::function<std::vector<double>(const BipartiteGraph& train, NodeId user)>;

struct EvaluationConfig {
  /// Share of each user's links moved to the probe set, in (0, 1).
  double probe_fraction = 0.1;
  /// Required.
  std::optional<std::uint64_t> seed;
  /// Length of the recommendation lists for precision and diversity.
  std::size_t list_length = 20;

  void validate() const;
};

struct EvaluationMetrics {
  /// Mean relative rank of probe items among the items the user has not
  /// collected in training; lower is better, 0.5 for random scores.
  double recovery = 0.0;
  double precision = 0.0;
  /// Mean pairwise Hamming distance 1 - overlap / N of the top-N lists.
  double diversity = 0.0;
  /// Mean training degree of recommended items.
  double mean_recommended_degree = 0.0;
  std::size_t evaluated_users = 0;
  /// Users whose probe draw would take all of their links.
  std::size_t skipped_users = 0;
  std::size_t probe_links = 0;
};

/// Leave-probe-out evaluation. Each user with k links gives max(1, round(f k))
/// of them, drawn without replacement from a per-user seeded stream.
EvaluationMetrics evaluate(const BipartiteGraph& graph, const Scorer& scorer,
                           const EvaluationConfig& config);

}  // namespace walkrank
