#pragma once

#include <map>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "walkrank/graph.hpp"
#include "walkrank/scores.hpp"
#include "walkrank/spectral.hpp"
#include "walkrank/transition.hpp"

namespace walkrank {

using SparseColMatrix = Eigen::SparseMatrix<double>;

/// How the absorbing nodes behave in the partitioned walk.
enum class BoundarySemantics {
  /// Absorbing rows are replaced by identity rows: P_SS = I and P_ST = 0.
  sink,
  /// Absorbing nodes keep their out-going rows so that they emit particles
  /// into the transient part; they still absorb whatever arrives.
  source,
};

/// Transition matrix split into absorbing (S) and transient (T) blocks, both
/// ordered by ascending node id.
struct AbsorbingPartition {
  std::vector<NodeId> absorbing;
  std::vector<NodeId> transient;
  BoundarySemantics semantics = BoundarySemantics::sink;
  SparseColMatrix ss;
  SparseColMatrix st;
  SparseColMatrix ts;
  SparseColMatrix tt;

  std::size_t transient_count() const noexcept { return transient.size(); }
  std::size_t absorbing_count() const noexcept { return absorbing.size(); }
  /// Transient nodes from which no absorbing node can be reached.
  std::vector<NodeId> trapped() const;
};

/// Splits P into blocks. The absorbing set must be nonempty and proper.
AbsorbingPartition partition(const TransitionMatrix& transition, const std::set<NodeId>& absorbing,
                             BoundarySemantics semantics = BoundarySemantics::sink);

/// F = (I - P_TT)^-1 P_TS: F(t, s) is the probability that a walk from the
/// t-th transient node ends in the s-th sink.
Eigen::MatrixXd absorption_probabilities(const AbsorbingPartition& p);

/// H = P_ST (I - P_TT)^-1: expected visits to each transient node by a
/// particle emitted from each source before it is absorbed.
Eigen::MatrixXd expected_visits_from_sources(const AbsorbingPartition& p);

struct FundamentalMatrix {
  /// V = (I - P_TT)^-1, expected visits of transient j from transient i.
  Eigen::MatrixXd visits;
  /// Expected number of steps before absorption, V 1.
  std::vector<double> absorption_time;
};

FundamentalMatrix fundamental_matrix(const AbsorbingPartition& p);

/// Expected absorption times alone (one solve instead of M).
std::vector<double> absorption_times(const AbsorbingPartition& p);

struct AbsorptionResult {
  Eigen::MatrixXd probabilities;
  Eigen::MatrixXd visits;
  std::vector<double> absorption_time;
};

AbsorptionResult analyze(const AbsorbingPartition& p);

/// Diversity-aware ordering: the PageRank winner first, then repeatedly the
/// node with the longest expected absorption time when every node picked so
/// far acts as a sink.
///
/// Nodes from which absorption is not certain have infinite absorption time
/// and are preferred; ties go to the smaller id.
std::vector<NodeId> diverse_ranking(const TransitionMatrix& transition,
                                    const PageRankParams& params, std::size_t length);

/// Temperatures that are fixed on `boundary` and equal the weighted mean of
/// the out-neighbors' temperatures everywhere else.
ScoreVector heat_equilibrium(const DirectedGraph& graph, const std::map<NodeId, double>& boundary);

struct DagInfluence {
  /// passing(i, j): probability that a walk started at j passes through i.
  Eigen::MatrixXd passing;
  /// sum_j passing(i, j) - 1.
  std::vector<double> impact;
  /// Number of other nodes from which i can be reached.
  std::vector<std::size_t> progeny;
};

/// Passing probabilities of the out-edge random walk on an acyclic graph.
/// Walks stop at nodes without out-going edges.
DagInfluence dag_influence(const DirectedGraph& graph);

/// Topological order (Kahn); throws AcyclicityError on cycles.
std::vector<NodeId> topological_order(const DirectedGraph& graph);

}  // namespace walkrank
