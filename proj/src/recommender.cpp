#include "walkrank/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "walkrank/absorbing.hpp"
#include "walkrank/parallel.hpp"

namespace walkrank {
namespace {

void require_user(const BipartiteGraph& graph, NodeId user) {
  if (user >= graph.user_count()) throw DomainError("user id out of range");
  if (graph.user_degree(user) == 0) throw ColdStartError(user);
}

double degree(std::size_t k) { return static_cast<double>(k); }

/// Items ordered by descending score, ties by ascending id.
std::vector<NodeId> order_items(std::span<const double> scores, const std::vector<bool>& skip) {
  std::vector<NodeId> items;
  for (NodeId a = 0; a < scores.size(); ++a) {
    if (!skip[a]) items.push_back(a);
  }
  std::stable_sort(items.begin(), items.end(),
                   [&](NodeId x, NodeId y) { return scores[x] > scores[y]; });
  return items;
}

std::mt19937_64 user_stream(std::uint64_t seed, NodeId user) {
  const auto u = static_cast<std::uint64_t>(user);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(u >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

void HybridParams::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
}

std::vector<double> initial_resource(const BipartiteGraph& graph, NodeId user, double theta) {
  require_user(graph, user);
  std::vector<double> resource(graph.item_count(), 0.0);
  for (NodeId b : graph.items_of(user)) {
    resource[b] = theta == 0.0 ? 1.0 : std::pow(degree(graph.item_degree(b)), theta);
  }
  return resource;
}

ScoreVector probs_scores(const BipartiteGraph& graph, NodeId user, double theta) {
  const auto resource = initial_resource(graph, user, theta);
  // item -> user: each item splits its resource evenly among its users.
  std::vector<double> at_user(graph.user_count(), 0.0);
  for (NodeId b : graph.items_of(user)) {
    const double share = resource[b] / degree(graph.item_degree(b));
    for (NodeId i : graph.users_of(b)) at_user[i] += share;
  }
  // user -> item: each user splits evenly among their items.
  std::vector<double> scores(graph.item_count(), 0.0);
  for (NodeId i = 0; i < graph.user_count(); ++i) {
    if (at_user[i] == 0.0) continue;
    const double share = at_user[i] / degree(graph.user_degree(i));
    for (NodeId a : graph.items_of(i)) scores[a] += share;
  }
  return ScoreVector(std::move(scores), Normalization::raw);
}

ScoreVector heats_scores(const BipartiteGraph& graph, NodeId user) {
  const auto resource = initial_resource(graph, user);
  // Each user takes the mean of their items' temperatures, then each item
  // the mean of its users'.
  std::vector<double> at_user(graph.user_count(), 0.0);
  for (NodeId i = 0; i < graph.user_count(); ++i) {
    const auto items = graph.items_of(i);
    if (items.empty()) continue;
    double total = 0.0;
    for (NodeId b : items) total += resource[b];
    at_user[i] = total / degree(items.size());
  }
  std::vector<double> scores(graph.item_count(), 0.0);
  for (NodeId a = 0; a < graph.item_count(); ++a) {
    const auto users = graph.users_of(a);
    if (users.empty()) continue;
    double total = 0.0;
    for (NodeId i : users) total += at_user[i];
    scores[a] = total / degree(users.size());
  }
  return ScoreVector(std::move(scores), Normalization::raw);
}

ScoreVector hybrid_scores(const BipartiteGraph& graph, NodeId user, const HybridParams& params) {
  params.validate();
  const auto resource = initial_resource(graph, user, params.theta);
  std::vector<double> at_user(graph.user_count(), 0.0);
  for (NodeId b : graph.items_of(user)) {
    const double share = resource[b] * std::pow(degree(graph.item_degree(b)), -params.lambda);
    for (NodeId i : graph.users_of(b)) at_user[i] += share / degree(graph.user_degree(i));
  }
  std::vector<double> scores(graph.item_count(), 0.0);
  for (NodeId a = 0; a < graph.item_count(); ++a) {
    const auto users = graph.users_of(a);
    if (users.empty()) continue;
    double total = 0.0;
    for (NodeId i : users) total += at_user[i];
    scores[a] = std::pow(degree(users.size()), params.lambda - 1.0) * total;
  }
  return ScoreVector(std::move(scores), Normalization::raw);
}

std::optional<double> predict_rating(const BipartiteGraph& graph, const SimilarityMatrix& users,
                                     NodeId user, NodeId item) {
  if (user >= graph.user_count() || item >= graph.item_count()) {
    throw DomainError("user or item id out of range");
  }
  if (users.size() != graph.user_count()) {
    throw DomainError("similarity matrix does not cover the users");
  }
  const auto mu_user = graph.mean_rating(user);
  if (!mu_user) throw ColdStartError(user);

  double weighted = 0.0;
  double mass = 0.0;
  for (NodeId j : graph.users_of(item)) {
    if (j == user) continue;
    const auto r = graph.rating(j, item);
    if (!r) continue;
    const double s = users(user, j);
    weighted += s * (*r - *graph.mean_rating(j));
    mass += std::abs(s);
  }
  if (mass == 0.0) return std::nullopt;
  return *mu_user + weighted / mass;
}

RecommendationList temperature_recommend(const DirectedGraph& item_graph,
                                         const std::set<NodeId>& liked,
                                         const std::set<NodeId>& disliked) {
  if (liked.empty()) throw DomainError("at least one liked item is required");
  std::map<NodeId, double> boundary;
  for (NodeId a : liked) boundary[a] = 1.0;
  for (NodeId a : disliked) {
    if (liked.count(a)) throw DomainError("an item cannot be both liked and disliked");
    boundary[a] = 0.0;
  }
  auto temperature = heat_equilibrium(item_graph, boundary);
  if (disliked.empty()) {
    // The solution is exactly 1 everywhere; drop solver round-off so the
    // ranking falls back to id order.
    temperature = ScoreVector(std::vector<double>(temperature.size(), 1.0), temperature.normalization());
  }
  RecommendationList list;
  list.excluded = liked;
  list.excluded.insert(disliked.begin(), disliked.end());
  std::vector<bool> skip(temperature.size(), false);
  for (NodeId a : list.excluded) skip[a] = true;
  for (NodeId a : order_items(temperature.values(), skip)) list.items.emplace_back(a, temperature[a]);
  return list;
}

RecommendationList top_n(const ScoreVector& scores, const std::set<NodeId>& exclude, std::size_t n,
                         std::optional<NodeId> user) {
  if (n < 1) throw DomainError("list length must be at least 1");
  RecommendationList list;
  list.user = user;
  list.excluded = exclude;
  std::vector<bool> skip(scores.size(), false);
  for (NodeId a : exclude) {
    if (a < skip.size()) skip[a] = true;
  }
  auto ordered = order_items(scores.values(), skip);
  if (ordered.size() > n) ordered.resize(n);
  for (NodeId a : ordered) list.items.emplace_back(a, scores[a]);
  return list;
}

void EvaluationConfig::validate() const {
  if (!(probe_fraction > 0.0 && probe_fraction < 1.0)) {
    throw DomainError("probe fraction must lie in (0, 1)");
  }
  if (!seed) throw DomainError("evaluation needs an explicit seed");
  if (list_length < 1) throw DomainError("list length must be at least 1");
}

EvaluationMetrics evaluate(const BipartiteGraph& graph, const Scorer& scorer,
                           const EvaluationConfig& config) {
  config.validate();
  const std::size_t users = graph.user_count();
  const std::size_t items = graph.item_count();

  // Probe draw.
  std::vector<std::vector<NodeId>> probe(users);
  EvaluationMetrics metrics;
  for (NodeId u = 0; u < users; ++u) {
    const auto collected = graph.items_of(u);
    const std::size_t k = collected.size();
    if (k == 0) continue;
    const auto m = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(config.probe_fraction * degree(k))));
    if (m >= k) {
      ++metrics.skipped_users;
      continue;
    }
    std::vector<NodeId> pool(collected.begin(), collected.end());
    auto rng = user_stream(*config.seed, u);
    for (std::size_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, k - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(m);
    std::sort(pool.begin(), pool.end());
    probe[u] = std::move(pool);
  }
  const auto train = graph.filtered([&](const RatingEntry& e) {
    return !std::binary_search(probe[e.user].begin(), probe[e.user].end(), e.item);
  });

  struct UserResult {
    bool evaluated = false;
    double recovery_sum = 0.0;
    double hits = 0.0;
    std::vector<NodeId> top;
  };
  std::vector<UserResult> results(users);
  parallel_for(users, [&](std::size_t begin, std::size_t end) {
    for (NodeId u = begin; u < end; ++u) {
      if (probe[u].empty()) continue;
      const auto scores = scorer(train, u);
      if (scores.size() != items) throw DomainError("scorer returned the wrong number of scores");
      std::vector<bool> skip(items, false);
      for (NodeId a : train.items_of(u)) skip[a] = true;
      const auto ordered = order_items(scores, skip);
      const double eligible = degree(ordered.size());
      auto& r = results[u];
      r.evaluated = true;
      for (std::size_t pos = 0; pos < ordered.size(); ++pos) {
        if (std::binary_search(probe[u].begin(), probe[u].end(), ordered[pos])) {
          r.recovery_sum += degree(pos + 1) / eligible;
          if (pos < config.list_length) r.hits += 1.0;
        }
      }
      r.top.assign(ordered.begin(),
                   ordered.begin() + static_cast<std::ptrdiff_t>(
                                         std::min(config.list_length, ordered.size())));
      std::sort(r.top.begin(), r.top.end());
    }
  }, 16);

  const double n = degree(config.list_length);
  double recovery = 0.0;
  double precision = 0.0;
  double degree_sum = 0.0;
  std::size_t recommended = 0;
  std::vector<const std::vector<NodeId>*> lists;
  for (NodeId u = 0; u < users; ++u) {
    const auto& r = results[u];
    if (!r.evaluated) continue;
    ++metrics.evaluated_users;
    metrics.probe_links += probe[u].size();
    recovery += r.recovery_sum;
    precision += r.hits / n;
    for (NodeId a : r.top) degree_sum += degree(train.item_degree(a));
    recommended += r.top.size();
    lists.push_back(&r.top);
  }
  if (metrics.evaluated_users == 0) return metrics;
  metrics.recovery = recovery / degree(metrics.probe_links);
  metrics.precision = precision / degree(metrics.evaluated_users);
  metrics.mean_recommended_degree = recommended ? degree_sum / degree(recommended) : 0.0;

  double distance = 0.0;
  std::size_t pairs = 0;
  std::vector<NodeId> common;
  for (std::size_t x = 0; x < lists.size(); ++x) {
    for (std::size_t y = x + 1; y < lists.size(); ++y) {
      common.clear();
      std::set_intersection(lists[x]->begin(), lists[x]->end(), lists[y]->begin(),
                            lists[y]->end(), std::back_inserter(common));
      distance += 1.0 - degree(common.size()) / n;
      ++pairs;
    }
  }
  metrics.diversity = pairs ? distance / degree(pairs) : 0.0;
  return metrics;
}

}  // namespace walkrank
