#include "walkrank/transition.hpp"

#include <string>

#include "walkrank/parallel.hpp"

namespace walkrank {
namespace {

using Triplet = Eigen::Triplet<double>;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

/// out[r] = sum over stored entries of row r of m times x.
void pull_product(const SparseRowMatrix& m, std::span<const double> x, std::span<double> out) {
  parallel_for(static_cast<std::size_t>(m.outerSize()), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      double acc = 0.0;
      for (SparseRowMatrix::InnerIterator it(m, idx(r)); it; ++it) {
        acc += it.value() * x[static_cast<std::size_t>(it.col())];
      }
      out[r] = acc;
    }
  });
}

}  // namespace

std::string_view to_string(DanglingPolicy policy) {
  switch (policy) {
    case DanglingPolicy::uniform: return "uniform";
    case DanglingPolicy::self_loop: return "self-loop";
    case DanglingPolicy::error: return "error";
  }
  return "uniform";
}

DanglingPolicy parse_dangling_policy(std::string_view text) {
  if (text == "uniform") return DanglingPolicy::uniform;
  if (text == "self-loop") return DanglingPolicy::self_loop;
  if (text == "error") return DanglingPolicy::error;
  throw DomainError("unknown dangling policy '" + std::string(text) + "'");
}

TransitionMatrix TransitionMatrix::from_weights(const SparseRowMatrix& weights,
                                                DanglingPolicy policy) {
  if (weights.rows() != weights.cols()) throw DomainError("weight matrix must be square");
  TransitionMatrix t;
  t.n_ = static_cast<std::size_t>(weights.rows());
  t.policy_ = policy;
  t.uniform_row_.assign(t.n_, false);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(weights.nonZeros()) + t.n_);
  for (std::size_t i = 0; i < t.n_; ++i) {
    double strength = 0.0;
    for (SparseRowMatrix::InnerIterator it(weights, idx(i)); it; ++it) {
      if (!(it.value() >= 0.0)) throw DomainError("weights must be non-negative");
      strength += it.value();
    }
    if (strength > 0.0) {
      for (SparseRowMatrix::InnerIterator it(weights, idx(i)); it; ++it) {
        if (it.value() > 0.0) triplets.emplace_back(idx(i), it.col(), it.value() / strength);
      }
      continue;
    }
    t.dangling_.push_back(i);
    if (policy == DanglingPolicy::self_loop) {
      triplets.emplace_back(idx(i), idx(i), 1.0);
    } else if (policy == DanglingPolicy::uniform) {
      t.uniform_row_[i] = true;
    }
  }
  if (policy == DanglingPolicy::error && !t.dangling_.empty()) {
    throw DanglingNodeError(t.dangling_);
  }

  t.rows_.resize(idx(t.n_), idx(t.n_));
  t.rows_.setFromTriplets(triplets.begin(), triplets.end());
  t.rows_.makeCompressed();
  t.columns_ = SparseRowMatrix(t.rows_.transpose());
  t.columns_.makeCompressed();
  return t;
}

bool TransitionMatrix::is_uniform_row(NodeId i) const { return uniform_row_.at(i); }

double TransitionMatrix::entry(NodeId i, NodeId j) const {
  if (uniform_row_.at(i)) return 1.0 / static_cast<double>(n_);
  return rows_.coeff(idx(i), idx(j));
}

double TransitionMatrix::row_sum(NodeId i) const {
  if (uniform_row_.at(i)) return 1.0;
  double total = 0.0;
  for (SparseRowMatrix::InnerIterator it(rows_, idx(i)); it; ++it) total += it.value();
  return total;
}

void TransitionMatrix::apply_transpose(std::span<const double> x, std::span<double> y) const {
  pull_product(columns_, x, y);
  if (policy_ != DanglingPolicy::uniform || dangling_.empty()) return;
  double dangling_mass = 0.0;
  for (NodeId i : dangling_) dangling_mass += x[i];
  const double share = dangling_mass / static_cast<double>(n_);
  for (auto& v : y) v += share;
}

void TransitionMatrix::apply(std::span<const double> x, std::span<double> y) const {
  pull_product(rows_, x, y);
  if (policy_ != DanglingPolicy::uniform || dangling_.empty()) return;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n_);
  for (NodeId i : dangling_) y[i] = mean;
}

Eigen::MatrixXd TransitionMatrix::dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd(rows_);
  for (NodeId i : dangling_) {
    if (uniform_row_[i]) d.row(idx(i)).setConstant(1.0 / static_cast<double>(n_));
  }
  return d;
}

SparseRowMatrix weight_matrix(const DirectedGraph& graph) {
  std::vector<Triplet> triplets;
  triplets.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) triplets.emplace_back(idx(e.source), idx(e.target), e.weight);
  SparseRowMatrix w(idx(graph.node_count()), idx(graph.node_count()));
  w.setFromTriplets(triplets.begin(), triplets.end());
  w.makeCompressed();
  return w;
}

TransitionMatrix build_transition(const DirectedGraph& graph, DanglingPolicy policy) {
  if (graph.node_count() == 0) throw DomainError("cannot build a transition matrix for an empty graph");
  return TransitionMatrix::from_weights(weight_matrix(graph), policy);
}

std::vector<double> HeatOperator::step(std::span<const double> temperatures) const {
  std::vector<double> next(size(), 0.0);
  pull_product(transposed_, temperatures, next);
  return next;
}

HeatOperator build_heat_operator(const DirectedGraph& graph, const WarningSink& warnings) {
  HeatOperator op;
  const std::size_t n = graph.node_count();
  std::vector<Triplet> triplets;
  triplets.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    triplets.emplace_back(idx(e.source), idx(e.target), e.weight / graph.in_strength(e.target));
  }
  for (NodeId j = 0; j < n; ++j) {
    if (graph.in_strength(j) == 0.0) op.zero_columns_.push_back(j);
  }
  if (warnings && !op.zero_columns_.empty()) {
    warnings(std::to_string(op.zero_columns_.size()) +
             " node(s) without in-coming links keep an all-zero heat-operator column");
  }
  op.matrix_.resize(idx(n), idx(n));
  op.matrix_.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix_.makeCompressed();
  op.transposed_ = SparseRowMatrix(op.matrix_.transpose());
  op.transposed_.makeCompressed();
  return op;
}

}  // namespace walkrank
