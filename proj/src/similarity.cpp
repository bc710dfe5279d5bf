#include "walkrank/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/LU>

namespace walkrank {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_dense_size(std::size_t n) {
  if (n > kDenseSimilarityLimit) {
    throw SizeError(std::to_string(n) + " nodes exceed the dense similarity limit of " +
                    std::to_string(kDenseSimilarityLimit) + "; use the per-node queries");
  }
}

void require_undirected(const DirectedGraph& graph) {
  if (!graph.is_symmetric()) throw DomainError("similarity needs an undirected graph");
  if (graph.total_weight() <= 0.0) throw DomainError("similarity needs at least one edge");
}

/// Walk matrix in which isolated nodes keep still.
TransitionMatrix walk_matrix(const DirectedGraph& graph) {
  return build_transition(graph, DanglingPolicy::self_loop);
}

/// (K X + (K X)^T) / 2E
Eigen::MatrixXd symmetrized_flow(const DirectedGraph& graph, const Eigen::MatrixXd& powers) {
  Eigen::VectorXd strength(idx(graph.node_count()));
  for (NodeId v = 0; v < graph.node_count(); ++v) strength(idx(v)) = graph.out_strength(v);
  const Eigen::MatrixXd flow = strength.asDiagonal() * powers;
  return (flow + flow.transpose()) / graph.total_weight();
}

SimilarityMatrix lrw_or_srw(const DirectedGraph& graph, std::size_t steps, bool superposed) {
  require_undirected(graph);
  if (steps < 1) throw DomainError("the number of walk steps must be at least 1");
  const std::size_t n = graph.node_count();
  require_dense_size(n);
  const auto transition = walk_matrix(graph);
  Eigen::MatrixXd powers = Eigen::MatrixXd::Identity(idx(n), idx(n));
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(idx(n), idx(n));
  for (std::size_t t = 0; t < steps; ++t) {
    powers = powers * transition.explicit_entries();
    if (superposed) sum += powers;
  }
  if (!superposed) sum = std::move(powers);
  return {symmetrized_flow(graph, sum), superposed ? SimilarityKind::srw : SimilarityKind::lrw};
}

std::vector<double> lrw_or_srw_row(const DirectedGraph& graph, NodeId node, std::size_t steps,
                                   bool superposed) {
  require_undirected(graph);
  if (steps < 1) throw DomainError("the number of walk steps must be at least 1");
  const std::size_t n = graph.node_count();
  if (node >= n) throw DomainError("node id out of range");
  const auto transition = walk_matrix(graph);
  // forward: row `node` of P^t; backward: column `node` of P^t.
  std::vector<double> forward(n, 0.0), backward(n, 0.0), next(n);
  std::vector<double> forward_sum(n, 0.0), backward_sum(n, 0.0);
  forward[node] = 1.0;
  backward[node] = 1.0;
  for (std::size_t t = 0; t < steps; ++t) {
    transition.apply_transpose(forward, next);
    forward.swap(next);
    transition.apply(backward, next);
    backward.swap(next);
    if (superposed) {
      for (std::size_t j = 0; j < n; ++j) {
        forward_sum[j] += forward[j];
        backward_sum[j] += backward[j];
      }
    }
  }
  if (!superposed) {
    forward_sum = std::move(forward);
    backward_sum = std::move(backward);
  }
  std::vector<double> row(n);
  const double k_node = graph.out_strength(node);
  for (NodeId j = 0; j < n; ++j) {
    row[j] = (k_node * forward_sum[j] + graph.out_strength(j) * backward_sum[j]) /
             graph.total_weight();
  }
  return row;
}

/// Sorted (index, value) profile per user or per item.
using Profile = std::vector<std::pair<NodeId, double>>;

std::vector<Profile> profiles(const BipartiteGraph& graph, BipartiteSide side) {
  const bool users = side == BipartiteSide::users;
  std::vector<Profile> result(users ? graph.user_count() : graph.item_count());
  // Entries are sorted by (user, item), so both sides come out sorted.
  for (const auto& e : graph.entries()) {
    const double value = e.rating.value_or(1.0);
    if (users) {
      result[e.user].emplace_back(e.item, value);
    } else {
      result[e.item].emplace_back(e.user, value);
    }
  }
  return result;
}

double pearson(const Profile& a, const Profile& b) {
  std::vector<std::pair<double, double>> common;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      common.emplace_back(i->second, j->second);
      ++i;
      ++j;
    }
  }
  if (common.size() < 2) return 0.0;
  double mean_a = 0.0, mean_b = 0.0;
  for (const auto& [x, y] : common) {
    mean_a += x;
    mean_b += y;
  }
  mean_a /= static_cast<double>(common.size());
  mean_b /= static_cast<double>(common.size());
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (const auto& [x, y] : common) {
    cov += (x - mean_a) * (y - mean_b);
    var_a += (x - mean_a) * (x - mean_a);
    var_b += (y - mean_b) * (y - mean_b);
  }
  if (var_a <= 0.0 || var_b <= 0.0) return 0.0;
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

std::size_t overlap(const Profile& a, const Profile& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

std::string_view to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::commute_time: return "commute";
    case SimilarityKind::ectd: return "ectd";
    case SimilarityKind::lrw: return "lrw";
    case SimilarityKind::srw: return "srw";
    case SimilarityKind::regularized: return "regularized";
    case SimilarityKind::pearson: return "pearson";
    case SimilarityKind::cosine: return "cosine";
  }
  return "commute";
}

SimilarityKind parse_similarity_kind(std::string_view text) {
  for (auto kind : {SimilarityKind::commute_time, SimilarityKind::ectd, SimilarityKind::lrw,
                    SimilarityKind::srw, SimilarityKind::regularized, SimilarityKind::pearson,
                    SimilarityKind::cosine}) {
    if (text == to_string(kind)) return kind;
  }
  throw DomainError("unknown similarity kind '" + std::string(text) + "'");
}

Eigen::MatrixXd laplacian_pseudoinverse(const DirectedGraph& graph) {
  if (!graph.is_symmetric()) throw DomainError("the Laplacian needs an undirected graph");
  const std::size_t n = graph.node_count();
  if (n == 0) throw DomainError("the Laplacian needs a nonempty graph");
  require_dense_size(n);
  if (!graph.is_weakly_connected()) throw ConnectivityError("the graph is not connected");

  const auto count = idx(n);
  const double share = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd corrected = Eigen::MatrixXd::Constant(count, count, -share);
  for (const auto& e : graph.edges()) {
    corrected(idx(e.source), idx(e.source)) += e.weight;
    corrected(idx(e.source), idx(e.target)) -= e.weight;
  }
  Eigen::MatrixXd pinv = corrected.partialPivLu().solve(Eigen::MatrixXd::Identity(count, count));
  pinv.array() += share;
  return 0.5 * (pinv + pinv.transpose());
}

SimilarityMatrix commute_time(const DirectedGraph& graph, const Eigen::MatrixXd& pseudoinverse) {
  const std::size_t n = graph.node_count();
  if (pseudoinverse.rows() != idx(n) || pseudoinverse.cols() != idx(n)) {
    throw DomainError("pseudoinverse size does not match the graph");
  }
  // total_weight counts both directions of every undirected edge: 2E.
  const double volume = graph.total_weight();
  Eigen::MatrixXd c(idx(n), idx(n));
  for (Eigen::Index i = 0; i < idx(n); ++i) {
    for (Eigen::Index j = 0; j < idx(n); ++j) {
      const double raw = pseudoinverse(i, i) + pseudoinverse(j, j) - 2.0 * pseudoinverse(i, j);
      c(i, j) = i == j ? 0.0 : std::max(0.0, volume * raw);
    }
  }
  c = 0.5 * (c + c.transpose()).eval();
  return {std::move(c), SimilarityKind::commute_time};
}

SimilarityMatrix commute_time(const DirectedGraph& graph) {
  return commute_time(graph, laplacian_pseudoinverse(graph));
}

SimilarityMatrix ectd(const SimilarityMatrix& commute) {
  if (commute.kind != SimilarityKind::commute_time) {
    throw DomainError("ectd needs a commute-time matrix");
  }
  return {commute.values.cwiseSqrt(), SimilarityKind::ectd};
}

SimilarityMatrix lrw_similarity(const DirectedGraph& graph, std::size_t steps) {
  return lrw_or_srw(graph, steps, false);
}

SimilarityMatrix srw_similarity(const DirectedGraph& graph, std::size_t steps) {
  return lrw_or_srw(graph, steps, true);
}

std::vector<double> lrw_row(const DirectedGraph& graph, NodeId node, std::size_t steps) {
  return lrw_or_srw_row(graph, node, steps, false);
}

std::vector<double> srw_row(const DirectedGraph& graph, NodeId node, std::size_t steps) {
  return lrw_or_srw_row(graph, node, steps, true);
}

SimilarityMatrix regularized_similarity(const Eigen::MatrixXd& similarity, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
  if (similarity.rows() != similarity.cols()) throw DomainError("similarity must be square");
  require_dense_size(static_cast<std::size_t>(similarity.rows()));
  if (!similarity.allFinite() || (similarity.array() < 0.0).any()) {
    throw DomainError("similarity entries must be finite and non-negative");
  }
  Eigen::MatrixXd p = similarity;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double total = p.row(i).sum();
    if (total <= 0.0) {
      throw DomainError("row " + std::to_string(i) + " has no similarity mass to normalize");
    }
    p.row(i) /= total;
  }
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(p.rows(), p.cols()) - alpha * p;
  Eigen::MatrixXd result = system.partialPivLu().solve(p);
  result = result.cwiseMax(0.0);
  return {std::move(result), SimilarityKind::regularized};
}

SimilarityMatrix regularized_similarity(const TransitionMatrix& transition, double alpha) {
  require_dense_size(transition.size());
  return regularized_similarity(transition.dense(), alpha);
}

SimilarityMatrix pearson_similarity(const BipartiteGraph& graph, BipartiteSide side) {
  if (!graph.has_ratings()) throw DomainError("pearson similarity needs a rating for every entry");
  const auto rows = profiles(graph, side);
  require_dense_size(rows.size());
  const auto n = idx(rows.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      const double value = pearson(rows[static_cast<std::size_t>(a)], rows[static_cast<std::size_t>(b)]);
      s(a, b) = value;
      s(b, a) = value;
    }
  }
  return {std::move(s), SimilarityKind::pearson};
}

SimilarityMatrix cosine_similarity(const BipartiteGraph& graph, BipartiteSide side) {
  const auto rows = profiles(graph, side);
  require_dense_size(rows.size());
  const auto n = idx(rows.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto& pa = rows[static_cast<std::size_t>(a)];
    if (pa.empty()) continue;
    for (Eigen::Index b = a; b < n; ++b) {
      const auto& pb = rows[static_cast<std::size_t>(b)];
      if (pb.empty()) continue;
      const double value = static_cast<double>(overlap(pa, pb)) /
                           std::sqrt(static_cast<double>(pa.size() * pb.size()));
      s(a, b) = value;
      s(b, a) = value;
    }
  }
  return {std::move(s), SimilarityKind::cosine};
}

}  // namespace walkrank
