#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "walkrank/bipartite.hpp"
#include "walkrank/graph.hpp"
#include "walkrank/transition.hpp"

namespace walkrank {

enum class SimilarityKind { commute_time, ectd, lrw, srw, regularized, pearson, cosine };

std::string_view to_string(SimilarityKind kind);
SimilarityKind parse_similarity_kind(std::string_view text);

/// Largest node count for which dense N x N matrices are built.
inline constexpr std::size_t kDenseSimilarityLimit = 10'000;

struct SimilarityMatrix {
  Eigen::MatrixXd values;
  SimilarityKind kind;

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
  double operator()(NodeId i, NodeId j) const {
    return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

/// L+ = (L - 11^T/N)^-1 + 11^T/N for an undirected connected graph, using
/// edge weights.
Eigen::MatrixXd laplacian_pseudoinverse(const DirectedGraph& graph);

/// C(i, j) = 2E (l_ii + l_jj - 2 l_ij), E the total undirected edge weight.
SimilarityMatrix commute_time(const DirectedGraph& graph, const Eigen::MatrixXd& pseudoinverse);
SimilarityMatrix commute_time(const DirectedGraph& graph);
/// Entrywise square root of a commute-time matrix.
SimilarityMatrix ectd(const SimilarityMatrix& commute);

/// s_ij = (k_i pi_ij(t) + k_j pi_ji(t)) / 2E with pi(t) = P^t.
SimilarityMatrix lrw_similarity(const DirectedGraph& graph, std::size_t steps);
/// Sum of lrw_similarity over 1..steps.
SimilarityMatrix srw_similarity(const DirectedGraph& graph, std::size_t steps);
/// Row `node` of the lrw/srw matrices from 2t sparse products.
std::vector<double> lrw_row(const DirectedGraph& graph, NodeId node, std::size_t steps);
std::vector<double> srw_row(const DirectedGraph& graph, NodeId node, std::size_t steps);

/// P (I - alpha P)^-1 with P the row-normalized input; alpha in [0, 1).
SimilarityMatrix regularized_similarity(const Eigen::MatrixXd& similarity, double alpha);
SimilarityMatrix regularized_similarity(const TransitionMatrix& transition, double alpha);

enum class BipartiteSide { users, items };

/// Pearson correlation over co-rated support; pairs with fewer than two
/// common ratings, or zero variance on the support, get 0.
SimilarityMatrix pearson_similarity(const BipartiteGraph& graph,
                                    BipartiteSide side = BipartiteSide::users);
/// Binary cosine |N(a) & N(b)| / sqrt(k_a k_b); 0 when a degree is zero.
SimilarityMatrix cosine_similarity(const BipartiteGraph& graph,
                                   BipartiteSide side = BipartiteSide::users);

}  // namespace walkrank
