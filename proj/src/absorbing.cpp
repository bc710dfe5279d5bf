#include "walkrank/absorbing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include <Eigen/SparseLU>

namespace walkrank {
namespace {

using Triplet = Eigen::Triplet<double>;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

constexpr double kResidualTarget = 1e-12;

/// LU factorization of a sparse square system with residual-checked solves.
class SparseSolver {
 public:
  explicit SparseSolver(SparseColMatrix system) : system_(std::move(system)) {
    system_.makeCompressed();
    lu_.analyzePattern(system_);
    lu_.factorize(system_);
    if (lu_.info() != Eigen::Success) {
      throw DomainError("sparse LU factorization failed: " + lu_.lastErrorMessage());
    }
  }

  /// Solves system * X = rhs, refining once or twice when the residual is
  /// above target.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const {
    Eigen::MatrixXd x = lu_.solve(rhs);
    const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    for (int refinement = 0; refinement < 2; ++refinement) {
      const Eigen::MatrixXd residual = rhs - system_ * x;
      if (residual.cwiseAbs().maxCoeff() <= kResidualTarget * scale) break;
      x += lu_.solve(residual);
    }
    return x;
  }

 private:
  SparseColMatrix system_;
  Eigen::SparseLU<SparseColMatrix> lu_;
};

SparseColMatrix identity_minus(const SparseColMatrix& block) {
  SparseColMatrix eye(block.rows(), block.cols());
  eye.setIdentity();
  SparseColMatrix result = eye - block;
  result.makeCompressed();
  return result;
}

/// Transient positions that cannot reach any absorbing node.
std::vector<bool> trapped_mask(const AbsorbingPartition& p) {
  const std::size_t m = p.transient_count();
  std::vector<bool> reaches(m, false);
  std::deque<std::size_t> queue;
  // ts is column-major: collect rows with any nonzero.
  for (Eigen::Index c = 0; c < p.ts.outerSize(); ++c) {
    for (SparseColMatrix::InnerIterator it(p.ts, c); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      if (it.value() > 0.0 && !reaches[r]) {
        reaches[r] = true;
        queue.push_back(r);
      }
    }
  }
  // Column k of tt lists the transient predecessors of k.
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (SparseColMatrix::InnerIterator it(p.tt, idx(k)); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      if (it.value() > 0.0 && !reaches[r]) {
        reaches[r] = true;
        queue.push_back(r);
      }
    }
  }
  std::vector<bool> trapped(m);
  for (std::size_t i = 0; i < m; ++i) trapped[i] = !reaches[i];
  return trapped;
}

void require_reachability(const AbsorbingPartition& p) {
  if (auto trapped = p.trapped(); !trapped.empty()) throw ReachabilityError(std::move(trapped));
}

}  // namespace

std::vector<NodeId> AbsorbingPartition::trapped() const {
  const auto mask = trapped_mask(*this);
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) ids.push_back(transient[i]);
  }
  return ids;
}

AbsorbingPartition partition(const TransitionMatrix& transition, const std::set<NodeId>& absorbing,
                             BoundarySemantics semantics) {
  const std::size_t n = transition.size();
  if (absorbing.empty()) throw DomainError("the absorbing set must not be empty");
  if (absorbing.size() >= n) throw DomainError("the absorbing set must leave transient nodes");
  if (*absorbing.rbegin() >= n) throw DomainError("absorbing node id out of range");

  AbsorbingPartition p;
  p.semantics = semantics;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> position(n, kNone);
  std::vector<bool> is_absorbing(n, false);
  for (NodeId s : absorbing) {
    position[s] = p.absorbing.size();
    is_absorbing[s] = true;
    p.absorbing.push_back(s);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!is_absorbing[v]) {
      position[v] = p.transient.size();
      p.transient.push_back(v);
    }
  }

  std::vector<Triplet> ss, st, ts, tt;
  const auto place = [&](NodeId i, NodeId j, double value) {
    const auto r = idx(position[i]);
    const auto c = idx(position[j]);
    if (is_absorbing[i]) {
      (is_absorbing[j] ? ss : st).emplace_back(r, c, value);
    } else {
      (is_absorbing[j] ? ts : tt).emplace_back(r, c, value);
    }
  };
  const auto& rows = transition.explicit_entries();
  const double uniform = 1.0 / static_cast<double>(n);
  for (NodeId i = 0; i < n; ++i) {
    if (is_absorbing[i] && semantics == BoundarySemantics::sink) {
      place(i, i, 1.0);
      continue;
    }
    if (transition.is_uniform_row(i)) {
      for (NodeId j = 0; j < n; ++j) place(i, j, uniform);
      continue;
    }
    for (SparseRowMatrix::InnerIterator it(rows, idx(i)); it; ++it) {
      place(i, static_cast<NodeId>(it.col()), it.value());
    }
  }

  const auto s = idx(p.absorbing.size());
  const auto m = idx(p.transient.size());
  const auto build = [](SparseColMatrix& block, Eigen::Index r, Eigen::Index c,
                        const std::vector<Triplet>& entries) {
    block.resize(r, c);
    block.setFromTriplets(entries.begin(), entries.end());
    block.makeCompressed();
  };
  build(p.ss, s, s, ss);
  build(p.st, s, m, st);
  build(p.ts, m, s, ts);
  build(p.tt, m, m, tt);
  return p;
}

Eigen::MatrixXd absorption_probabilities(const AbsorbingPartition& p) {
  require_reachability(p);
  const SparseSolver solver(identity_minus(p.tt));
  return solver.solve(Eigen::MatrixXd(p.ts));
}

Eigen::MatrixXd expected_visits_from_sources(const AbsorbingPartition& p) {
  require_reachability(p);
  // H = P_ST (I - P_TT)^-1, solved as (I - P_TT)^T H^T = P_ST^T.
  const SparseSolver solver(SparseColMatrix(identity_minus(p.tt).transpose()));
  const Eigen::MatrixXd rhs = Eigen::MatrixXd(p.st).transpose();
  return solver.solve(rhs).transpose();
}

FundamentalMatrix fundamental_matrix(const AbsorbingPartition& p) {
  require_reachability(p);
  const auto m = idx(p.transient_count());
  const SparseSolver solver(identity_minus(p.tt));
  FundamentalMatrix result;
  result.visits = solver.solve(Eigen::MatrixXd::Identity(m, m));
  const Eigen::VectorXd times = result.visits.rowwise().sum();
  result.absorption_time.assign(times.begin(), times.end());
  return result;
}

std::vector<double> absorption_times(const AbsorbingPartition& p) {
  require_reachability(p);
  const auto m = idx(p.transient_count());
  const SparseSolver solver(identity_minus(p.tt));
  const Eigen::MatrixXd times = solver.solve(Eigen::MatrixXd::Ones(m, 1));
  return {times.data(), times.data() + times.size()};
}

AbsorptionResult analyze(const AbsorbingPartition& p) {
  auto fundamental = fundamental_matrix(p);
  AbsorptionResult result;
  result.probabilities = fundamental.visits * Eigen::MatrixXd(p.ts);
  result.visits = std::move(fundamental.visits);
  result.absorption_time = std::move(fundamental.absorption_time);
  return result;
}

std::vector<NodeId> diverse_ranking(const TransitionMatrix& transition,
                                    const PageRankParams& params, std::size_t length) {
  const std::size_t n = transition.size();
  if (length < 1 || length >= n) {
    throw DomainError("list length must satisfy 1 <= L < N (N = " + std::to_string(n) + ")");
  }
  const auto scores = pagerank(transition, params);
  std::vector<NodeId> picked{ranking(scores.values()).front()};
  std::set<NodeId> sinks(picked.begin(), picked.end());

  while (picked.size() < length) {
    const auto p = partition(transition, sinks);
    const std::size_t m = p.transient_count();

    // Absorption is not certain from nodes that can reach a trapped node;
    // their expected absorption time is infinite.
    std::vector<bool> infinite = trapped_mask(p);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < m; ++i) {
      if (infinite[i]) queue.push_back(i);
    }
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      for (SparseColMatrix::InnerIterator it(p.tt, idx(k)); it; ++it) {
        const auto r = static_cast<std::size_t>(it.row());
        if (it.value() > 0.0 && !infinite[r]) {
          infinite[r] = true;
          queue.push_back(r);
        }
      }
    }

    std::size_t choice = m;
    if (auto first = std::find(infinite.begin(), infinite.end(), true); first != infinite.end()) {
      choice = static_cast<std::size_t>(first - infinite.begin());
    } else {
      const SparseSolver solver(identity_minus(p.tt));
      const Eigen::MatrixXd times = solver.solve(Eigen::MatrixXd::Ones(idx(m), 1));
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (times(idx(i), 0) > best) {
          best = times(idx(i), 0);
          choice = i;
        }
      }
    }
    picked.push_back(p.transient[choice]);
    sinks.insert(p.transient[choice]);
  }
  return picked;
}

ScoreVector heat_equilibrium(const DirectedGraph& graph, const std::map<NodeId, double>& boundary) {
  const std::size_t n = graph.node_count();
  if (boundary.empty()) throw DomainError("heat equilibrium needs at least one boundary node");
  std::vector<double> temperature(n, 0.0);
  std::vector<bool> fixed(n, false);
  for (const auto& [node, value] : boundary) {
    if (node >= n) throw DomainError("boundary node id out of range");
    if (!std::isfinite(value)) throw DomainError("boundary temperatures must be finite");
    temperature[node] = value;
    fixed[node] = true;
  }

  // Free nodes that cannot reach the boundary along out-edges.
  std::vector<std::vector<NodeId>> predecessors(n);
  for (const auto& e : graph.edges()) predecessors[e.target].push_back(e.source);
  std::vector<bool> reaches(fixed);
  std::deque<NodeId> queue;
  for (NodeId v = 0; v < n; ++v) {
    if (fixed[v]) queue.push_back(v);
  }
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId u : predecessors[v]) {
      if (!reaches[u]) {
        reaches[u] = true;
        queue.push_back(u);
      }
    }
  }
  std::vector<NodeId> trapped;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> position(n, kNone);
  std::vector<NodeId> free_nodes;
  for (NodeId v = 0; v < n; ++v) {
    if (!reaches[v]) trapped.push_back(v);
    if (!fixed[v]) {
      position[v] = free_nodes.size();
      free_nodes.push_back(v);
    }
  }
  if (!trapped.empty()) throw ReachabilityError(std::move(trapped));
  if (free_nodes.empty()) return ScoreVector(std::move(temperature), Normalization::raw);

  // Strength-weighted balance s_i x_i - sum_{j free} w_ij x_j = sum_{b fixed} w_ib T_b.
  const auto m = idx(free_nodes.size());
  std::vector<Triplet> entries;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 1);
  for (NodeId v : free_nodes) {
    const auto r = idx(position[v]);
    entries.emplace_back(r, r, graph.out_strength(v));
    for (const auto& e : graph.out_edges(v)) {
      if (fixed[e.target]) {
        rhs(r, 0) += e.weight * temperature[e.target];
      } else {
        entries.emplace_back(r, idx(position[e.target]), -e.weight);
      }
    }
  }
  SparseColMatrix system(m, m);
  system.setFromTriplets(entries.begin(), entries.end());
  const SparseSolver solver(std::move(system));
  const Eigen::MatrixXd x = solver.solve(rhs);
  for (NodeId v : free_nodes) temperature[v] = x(idx(position[v]), 0);
  return ScoreVector(std::move(temperature), Normalization::raw);
}

std::vector<NodeId> topological_order(const DirectedGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> indegree(n);
  for (NodeId v = 0; v < n; ++v) indegree[v] = graph.in_degree(v);
  std::deque<NodeId> ready;
  for (NodeId v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId u = ready.front();
    ready.pop_front();
    order.push_back(u);
    for (const auto& e : graph.out_edges(u)) {
      if (--indegree[e.target] == 0) ready.push_back(e.target);
    }
  }
  if (order.size() != n) {
    throw AcyclicityError("graph contains a cycle (" + std::to_string(n - order.size()) +
                          " nodes lie on or behind cycles)");
  }
  return order;
}

DagInfluence dag_influence(const DirectedGraph& graph) {
  const std::size_t n = graph.node_count();
  const auto order = topological_order(graph);
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[order[k]] = k;

  DagInfluence result;
  result.passing = Eigen::MatrixXd::Zero(idx(n), idx(n));
  result.progeny.assign(n, 0);
  std::vector<double> pass(n);
  std::vector<char> reached(n);
  for (NodeId start = 0; start < n; ++start) {
    std::fill(pass.begin(), pass.end(), 0.0);
    std::fill(reached.begin(), reached.end(), 0);
    pass[start] = 1.0;
    reached[start] = 1;
    for (std::size_t k = rank[start]; k < n; ++k) {
      const NodeId u = order[k];
      if (!reached[u]) continue;
      const double strength = graph.out_strength(u);
      for (const auto& e : graph.out_edges(u)) {
        pass[e.target] += pass[u] * e.weight / strength;
        reached[e.target] = 1;
      }
    }
    for (NodeId i = 0; i < n; ++i) {
      result.passing(idx(i), idx(start)) = std::min(1.0, pass[i]);
      if (reached[i] && i != start) ++result.progeny[i];
    }
  }
  result.impact.resize(n);
  for (NodeId i = 0; i < n; ++i) result.impact[i] = result.passing.row(idx(i)).sum() - 1.0;
  return result;
}

}  // namespace walkrank
