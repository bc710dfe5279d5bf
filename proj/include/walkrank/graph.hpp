#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "walkrank/errors.hpp"

namespace walkrank {

/// Receives non-fatal diagnostics (duplicate entries, zero in-strength columns).
using WarningSink = std::function<void(const std::string&)>;

/// Writes warnings to stderr.
WarningSink stderr_warnings();

/// Interns arbitrary string labels to dense ids in first-seen order.
class LabelIndex {
 public:
  NodeId intern(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;
  /// Like `find` but throws DomainError for unknown labels.
  NodeId at(std::string_view label) const;
  const std::string& label(NodeId id) const { return labels_.at(id); }
  std::size_t size() const noexcept { return labels_.size(); }

  /// Labels "0".."n-1", for graphs built programmatically.
  static LabelIndex numbered(std::size_t n);

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> ids_;
};

struct Edge {
  NodeId source;
  NodeId target;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted sparse directed graph, immutable after construction.
///
/// Edges are stored sorted by (source, target) with compressed row offsets.
/// Weights are strictly positive, duplicates are merged by summing weights and
/// zero-weight edges are dropped. Undirected graphs are represented by
/// explicit symmetric edge pairs.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Validates ids and weights, merges duplicates. Labels default to the
  /// decimal ids.
  static DirectedGraph from_edges(std::size_t node_count, std::vector<Edge> edges,
                                  std::optional<LabelIndex> labels = std::nullopt);

  /// Mirrors every edge; pairs already present in both directions are summed.
  static DirectedGraph undirected_from_edges(std::size_t node_count,
                                             const std::vector<Edge>& edges,
                                             std::optional<LabelIndex> labels = std::nullopt);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Edge> out_edges(NodeId node) const;

  const LabelIndex& labels() const noexcept { return labels_; }
  const std::string& label(NodeId id) const { return labels_.label(id); }

  std::size_t out_degree(NodeId node) const { return offsets_[node + 1] - offsets_[node]; }
  double out_strength(NodeId node) const { return out_strength_[node]; }
  double in_strength(NodeId node) const { return in_strength_[node]; }
  std::size_t in_degree(NodeId node) const { return in_degree_[node]; }
  double total_weight() const noexcept { return total_weight_; }

  /// Weight of edge source->target, 0 when absent.
  double weight(NodeId source, NodeId target) const;

  /// True when every edge has a reverse edge of equal weight.
  bool is_symmetric() const noexcept { return symmetric_; }

  /// Weakly connected (ignores direction). The empty graph counts as connected.
  bool is_weakly_connected() const;

  /// Same graph with every weight multiplied by `factor` > 0.
  DirectedGraph scaled(double factor) const;

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<double> out_strength_;
  std::vector<double> in_strength_;
  std::vector<std::size_t> in_degree_;
  double total_weight_ = 0.0;
  bool symmetric_ = true;
  LabelIndex labels_;
};

struct ParseOptions {
  /// Mirror every line into a symmetric edge pair.
  bool undirected = false;
  WarningSink warnings;
};

/// Parses `source<TAB>target[<TAB>weight]` lines; `#` lines and blank lines
/// are skipped. Missing weights default to 1.
DirectedGraph load_directed_graph(std::string_view text, const ParseOptions& options = {});

/// Reads an edge list from disk, transparently decompressing gzip input.
DirectedGraph read_directed_graph(const std::string& path, const ParseOptions& options = {});

/// Edge-list TSV that `load_directed_graph` reads back to an identical graph.
/// Isolated nodes are not representable in the edge-list format and are lost.
std::string serialize(const DirectedGraph& graph);

/// Adds a ground node (id N) linked in both directions to every original node
/// with unit weight.
DirectedGraph add_ground_node(const DirectedGraph& graph);

/// Ids reachable from `start` along edge direction (including `start`).
std::vector<bool> reachable_from(const DirectedGraph& graph, NodeId start);

}  // namespace walkrank
