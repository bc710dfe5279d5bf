#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "walkrank/graph.hpp"

namespace walkrank {

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class DanglingPolicy { uniform, self_loop, error };

std::string_view to_string(DanglingPolicy policy);
DanglingPolicy parse_dangling_policy(std::string_view text);

/// Row-stochastic random-walk matrix P with P_ij = w_ij / sum_k w_ik.
///
/// Rows of nodes without out-going weight follow the recorded dangling
/// policy. Uniform dangling rows are kept implicit (a rank-one correction in
/// the products), so the matrix never becomes dense.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;

  /// Row-normalizes a non-negative square weight matrix.
  static TransitionMatrix from_weights(const SparseRowMatrix& weights, DanglingPolicy policy);

  std::size_t size() const noexcept { return n_; }
  DanglingPolicy policy() const noexcept { return policy_; }
  /// Ascending ids of rows that had zero out-strength.
  const std::vector<NodeId>& dangling_rows() const noexcept { return dangling_; }
  bool is_uniform_row(NodeId i) const;

  double entry(NodeId i, NodeId j) const;
  double row_sum(NodeId i) const;

  /// Stored (non-implicit) entries; uniform dangling rows are empty here.
  const SparseRowMatrix& explicit_entries() const noexcept { return rows_; }

  /// y = P^T x, i.e. one step of the occupancy distribution.
  void apply_transpose(std::span<const double> x, std::span<double> y) const;
  /// y = P x, i.e. one step of a function averaged over successors.
  void apply(std::span<const double> x, std::span<double> y) const;

  Eigen::MatrixXd dense() const;

 private:
  std::size_t n_ = 0;
  DanglingPolicy policy_ = DanglingPolicy::uniform;
  std::vector<NodeId> dangling_;
  std::vector<bool> uniform_row_;
  SparseRowMatrix rows_;
  SparseRowMatrix columns_;  // transpose of rows_, row-major for pull products
};

/// Builds P from a graph. Throws DanglingNodeError under the error policy.
TransitionMatrix build_transition(const DirectedGraph& graph,
                                  DanglingPolicy policy = DanglingPolicy::uniform);

/// Neighbor-averaging operator O_ij = w_ij / s_j, where s_j is the
/// in-strength of j. One heat step maps temperatures T to O^T T, so each node
/// takes the weighted mean temperature of its in-neighbors.
class HeatOperator {
 public:
  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  double entry(NodeId i, NodeId j) const { return matrix_.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  const SparseRowMatrix& matrix() const noexcept { return matrix_; }
  /// Columns left all-zero because the node has no in-coming weight.
  const std::vector<NodeId>& zero_columns() const noexcept { return zero_columns_; }

  std::vector<double> step(std::span<const double> temperatures) const;

 private:
  friend HeatOperator build_heat_operator(const DirectedGraph&, const WarningSink&);
  SparseRowMatrix matrix_;
  SparseRowMatrix transposed_;
  std::vector<NodeId> zero_columns_;
};

HeatOperator build_heat_operator(const DirectedGraph& graph, const WarningSink& warnings = {});

/// Sparse weight matrix W_ij = w_ij of a graph.
SparseRowMatrix weight_matrix(const DirectedGraph& graph);

}  // namespace walkrank
