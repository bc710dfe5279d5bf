#pragma once

#include <optional>
#include <set>
#include <span>

#include "walkrank/graph.hpp"
#include "walkrank/scores.hpp"
#include "walkrank/transition.hpp"

namespace walkrank {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr std::size_t kDefaultMaxIterations = 1000;
inline constexpr std::size_t kDenseSolveLimit = 2000;

struct PageRankParams {
  /// Probability of following a link rather than teleporting.
  double alpha = 0.85;
  /// Teleportation distribution; uniform when absent.
  std::optional<ScoreVector> teleport;
  /// Stop once the L1 change between iterates drops below this.
  double tolerance = kDefaultTolerance;
  std::size_t max_iterations = kDefaultMaxIterations;
  /// Largest N accepted by the direct solvers.
  std::size_t dense_limit = kDenseSolveLimit;

  /// Expected number of links followed before a jump, alpha / (1 - alpha).
  double mean_chain_length() const;

  /// Throws DomainError when alpha or the teleport vector is invalid for `n` nodes.
  void validate(std::size_t n) const;
};

/// Fixed point of h <- alpha P^T h + (1 - alpha) v by sparse power iteration,
/// started from v. With alpha = 1 the caller asserts irreducibility.
ScoreVector pagerank(const TransitionMatrix& transition, const PageRankParams& params = {});

/// h = (1 - alpha) (I - alpha P^T)^-1 v by a dense LU solve. Requires alpha < 1
/// and N <= params.dense_limit.
ScoreVector pagerank_direct(const TransitionMatrix& transition, const PageRankParams& params = {});

/// PageRank integrated over alpha in [0, 1 - 1e-6] with Gauss-Legendre
/// quadrature, renormalized to sum one.
ScoreVector totalrank(const TransitionMatrix& transition, std::size_t quadrature_points = 32,
                      std::size_t dense_limit = kDenseSolveLimit);

/// Gauss-Legendre nodes and weights on [lower, upper].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(std::size_t points, double lower, double upper);

struct HitsResult {
  ScoreVector authority;
  ScoreVector hub;
  std::size_t iterations = 0;
};

/// Authorities x <- A^T y and hubs y <- A x, each L1-normalized per half step,
/// starting from uniform hubs.
HitsResult hits(const DirectedGraph& graph, double tolerance = kDefaultTolerance,
                std::size_t max_iterations = kDefaultMaxIterations);

/// Dominant eigenvector of A^T, L1-normalized.
///
/// Iterates with A^T + I, which has the same eigenvectors but breaks the
/// +-lambda tie of bipartite graphs that makes plain power iteration
/// oscillate.
ScoreVector eigenvector_centrality(const DirectedGraph& graph,
                                   double tolerance = kDefaultTolerance,
                                   std::size_t max_iterations = 10 * kDefaultMaxIterations);

/// Teleport v_i proportional to exp(-age_i / tau).
ScoreVector citerank_teleport(std::span<const double> ages, double tau);

/// PageRank with the age-decayed teleport of `citerank_teleport`.
ScoreVector citerank(const TransitionMatrix& transition, std::span<const double> ages, double tau,
                     double alpha, double tolerance = kDefaultTolerance,
                     std::size_t max_iterations = kDefaultMaxIterations);

/// Uniform teleport over a set of trusted nodes.
ScoreVector trusted_teleport(const std::set<NodeId>& trusted, std::size_t n);

/// Scores from the stationary walk on the graph augmented with a ground node
/// (alpha = 1), with the ground node dropped and the rest renormalized.
ScoreVector ground_node_rank(const DirectedGraph& graph, double tolerance = kDefaultTolerance,
                             std::size_t max_iterations = 10 * kDefaultMaxIterations);

}  // namespace walkrank
