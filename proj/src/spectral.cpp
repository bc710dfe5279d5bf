#include "walkrank/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/LU>

namespace walkrank {
namespace {

std::vector<double> uniform(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

std::vector<double> teleport_values(const PageRankParams& params, std::size_t n) {
  if (!params.teleport) return uniform(n);
  const auto v = params.teleport->values();
  return {v.begin(), v.end()};
}

/// Rescales v to unit L1 norm; returns false when v is all zero.
bool normalize_l1(std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += std::abs(x);
  if (total == 0.0) return false;
  for (double& x : v) x /= total;
  return true;
}

std::vector<double> clamp_non_negative(std::vector<double> v) {
  for (double& x : v) x = std::max(x, 0.0);
  return v;
}

}  // namespace

double PageRankParams::mean_chain_length() const {
  if (alpha >= 1.0) return std::numeric_limits<double>::infinity();
  return alpha / (1.0 - alpha);
}

void PageRankParams::validate(std::size_t n) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  if (max_iterations == 0) throw DomainError("max_iterations must be positive");
  if (!teleport) return;
  if (teleport->size() != n) {
    throw DomainError("teleport vector has " + std::to_string(teleport->size()) +
                      " entries for " + std::to_string(n) + " nodes");
  }
  double total = 0.0;
  for (double v : *teleport) {
    if (v < 0.0) throw DomainError("teleport vector has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > ScoreVector::kNormalizationTolerance) {
    throw DomainError("teleport vector must sum to one");
  }
}

ScoreVector pagerank(const TransitionMatrix& transition, const PageRankParams& params) {
  const std::size_t n = transition.size();
  if (n == 0) throw DomainError("pagerank needs a nonempty graph");
  params.validate(n);

  const std::vector<double> v = teleport_values(params, n);
  const double alpha = params.alpha;
  std::vector<double> h = v;
  std::vector<double> next(n, 0.0);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 1; iter <= params.max_iterations; ++iter) {
    transition.apply_transpose(h, next);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = alpha * next[i] + (1.0 - alpha) * v[i];
      residual += std::abs(next[i] - h[i]);
    }
    h.swap(next);
    if (residual < params.tolerance) {
      return ScoreVector::normalized(clamp_non_negative(std::move(h)), Normalization::sum_one);
    }
  }
  throw ConvergenceError("pagerank", params.max_iterations, residual, std::move(h));
}

ScoreVector pagerank_direct(const TransitionMatrix& transition, const PageRankParams& params) {
  const std::size_t n = transition.size();
  if (n == 0) throw DomainError("pagerank needs a nonempty graph");
  params.validate(n);
  if (params.alpha >= 1.0) throw DomainError("the direct solve requires alpha < 1");
  if (n > params.dense_limit) {
    throw SizeError("graph has " + std::to_string(n) + " nodes, above the dense-solve limit of " +
                    std::to_string(params.dense_limit) + "; use the iterative pagerank");
  }
  const auto count = static_cast<Eigen::Index>(n);
  const std::vector<double> v = teleport_values(params, n);
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(count, count) -
                           params.alpha * transition.dense().transpose();
  Eigen::VectorXd rhs = (1.0 - params.alpha) * Eigen::Map<const Eigen::VectorXd>(v.data(), count);
  Eigen::VectorXd h = system.partialPivLu().solve(rhs);
  return ScoreVector::normalized(clamp_non_negative({h.begin(), h.end()}), Normalization::sum_one);
}

QuadratureRule gauss_legendre(std::size_t points, double lower, double upper) {
  if (points < 1) throw DomainError("quadrature needs at least one point");
  QuadratureRule rule{std::vector<double>(points), std::vector<double>(points)};
  const double mid = 0.5 * (upper + lower);
  const double half = 0.5 * (upper - lower);
  const auto n = static_cast<double>(points);
  // Roots of P_n by Newton's method from the Chebyshev-like initial guess;
  // roots are symmetric so only half are computed.
  for (std::size_t i = 0; i < (points + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int newton = 0; newton < 100; ++newton) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= points; ++k) {
        const auto kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = mid - half * x;
    rule.nodes[points - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[points - 1 - i] = half * w;
  }
  return rule;
}

ScoreVector totalrank(const TransitionMatrix& transition, std::size_t quadrature_points,
                      std::size_t dense_limit) {
  if (quadrature_points < 2) throw DomainError("totalrank needs at least two quadrature points");
  constexpr double kUpperGap = 1e-6;
  const std::size_t n = transition.size();
  const auto rule = gauss_legendre(quadrature_points, 0.0, 1.0 - kUpperGap);
  std::vector<double> total(n, 0.0);
  PageRankParams params;
  params.dense_limit = dense_limit;
  for (std::size_t k = 0; k < quadrature_points; ++k) {
    params.alpha = rule.nodes[k];
    const auto h = pagerank_direct(transition, params);
    for (std::size_t i = 0; i < n; ++i) total[i] += rule.weights[k] * h[i];
  }
  return ScoreVector::normalized(std::move(total), Normalization::sum_one);
}

HitsResult hits(const DirectedGraph& graph, double tolerance, std::size_t max_iterations) {
  const std::size_t n = graph.node_count();
  if (graph.edge_count() == 0) throw DomainError("hits needs at least one edge");
  std::vector<double> authority = uniform(n);
  std::vector<double> hub = uniform(n);
  std::vector<double> next_authority(n);
  std::vector<double> next_hub(n);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
    std::fill(next_authority.begin(), next_authority.end(), 0.0);
    for (const auto& e : graph.edges()) next_authority[e.target] += e.weight * hub[e.source];
    normalize_l1(next_authority);
    std::fill(next_hub.begin(), next_hub.end(), 0.0);
    for (const auto& e : graph.edges()) next_hub[e.source] += e.weight * next_authority[e.target];
    normalize_l1(next_hub);

    residual = l1_distance(next_authority, authority) + l1_distance(next_hub, hub);
    authority.swap(next_authority);
    hub.swap(next_hub);
    if (residual < tolerance) {
      return {ScoreVector::normalized(std::move(authority), Normalization::sum_one),
              ScoreVector::normalized(std::move(hub), Normalization::sum_one), iter};
    }
  }
  throw ConvergenceError("hits", max_iterations, residual, std::move(authority));
}

ScoreVector eigenvector_centrality(const DirectedGraph& graph, double tolerance,
                                   std::size_t max_iterations) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw DomainError("eigenvector centrality needs a nonempty graph");
  std::vector<double> x = uniform(n);
  std::vector<double> next(n);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
    next = x;
    for (const auto& e : graph.edges()) next[e.target] += e.weight * x[e.source];
    normalize_l1(next);
    residual = l1_distance(next, x);
    x.swap(next);
    if (residual < tolerance) {
      return ScoreVector::normalized(clamp_non_negative(std::move(x)), Normalization::sum_one);
    }
  }
  throw ConvergenceError("eigenvector centrality", max_iterations, residual, std::move(x));
}

ScoreVector citerank_teleport(std::span<const double> ages, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive and finite");
  if (ages.empty()) throw DomainError("citerank needs at least one node");
  double youngest = std::numeric_limits<double>::infinity();
  for (double t : ages) {
    if (!std::isfinite(t) || t < 0.0) throw DomainError("ages must be finite and non-negative");
    youngest = std::min(youngest, t);
  }
  // Shifting by the youngest age cancels in the normalization and keeps at
  // least one weight equal to one, so the teleport mass cannot underflow.
  std::vector<double> v(ages.size());
  for (std::size_t i = 0; i < ages.size(); ++i) v[i] = std::exp(-(ages[i] - youngest) / tau);
  return ScoreVector::normalized(std::move(v), Normalization::sum_one);
}

ScoreVector citerank(const TransitionMatrix& transition, std::span<const double> ages, double tau,
                     double alpha, double tolerance, std::size_t max_iterations) {
  if (ages.size() != transition.size()) throw DomainError("one age per node is required");
  PageRankParams params;
  params.alpha = alpha;
  params.teleport = citerank_teleport(ages, tau);
  params.tolerance = tolerance;
  params.max_iterations = max_iterations;
  return pagerank(transition, params);
}

ScoreVector trusted_teleport(const std::set<NodeId>& trusted, std::size_t n) {
  if (trusted.empty()) throw DomainError("the trusted set must not be empty");
  std::vector<double> v(n, 0.0);
  const double share = 1.0 / static_cast<double>(trusted.size());
  for (NodeId id : trusted) {
    if (id >= n) throw DomainError("trusted node id " + std::to_string(id) + " out of range");
    v[id] = share;
  }
  return ScoreVector(std::move(v), Normalization::sum_one);
}

ScoreVector ground_node_rank(const DirectedGraph& graph, double tolerance,
                             std::size_t max_iterations) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw DomainError("ground-node rank needs a nonempty graph");
  // Without original edges the augmented graph is a star, whose walk has
  // period two; by symmetry every original node then scores the same.
  if (graph.edge_count() == 0) return ScoreVector(uniform(n), Normalization::sum_one);

  const auto augmented = add_ground_node(graph);
  PageRankParams params;
  params.alpha = 1.0;
  params.tolerance = tolerance;
  params.max_iterations = max_iterations;
  const auto h = pagerank(build_transition(augmented, DanglingPolicy::uniform), params);
  std::vector<double> original(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(n));
  return ScoreVector::normalized(std::move(original), Normalization::sum_one);
}

}  // namespace walkrank
