#include "walkrank/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>

#include "walkrank/io.hpp"

namespace walkrank {

WarningSink stderr_warnings() {
  return [](const std::string& message) { std::cerr << "warning: " << message << '\n'; };
}

NodeId LabelIndex::intern(std::string_view label) {
  const std::string key(label);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  const NodeId id = labels_.size();
  labels_.push_back(key);
  ids_.emplace(key, id);
  return id;
}

std::optional<NodeId> LabelIndex::find(std::string_view label) const {
  if (auto it = ids_.find(std::string(label)); it != ids_.end()) return it->second;
  return std::nullopt;
}

NodeId LabelIndex::at(std::string_view label) const {
  if (auto id = find(label)) return *id;
  throw DomainError("unknown label '" + std::string(label) + "'");
}

LabelIndex LabelIndex::numbered(std::size_t n) {
  LabelIndex index;
  for (std::size_t i = 0; i < n; ++i) index.intern(std::to_string(i));
  return index;
}

DirectedGraph DirectedGraph::from_edges(std::size_t node_count, std::vector<Edge> edges,
                                        std::optional<LabelIndex> labels) {
  DirectedGraph g;
  g.node_count_ = node_count;
  g.labels_ = labels ? std::move(*labels) : LabelIndex::numbered(node_count);
  if (g.labels_.size() != node_count) {
    throw DomainError("label count " + std::to_string(g.labels_.size()) +
                      " does not match node count " + std::to_string(node_count));
  }

  for (const auto& e : edges) {
    if (e.source >= node_count || e.target >= node_count) {
      throw DomainError("edge endpoint out of range");
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw DomainError("edge weight must be finite and non-negative");
    }
  }
  std::erase_if(edges, [](const Edge& e) { return e.weight == 0.0; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  for (const auto& e : edges) {
    if (!g.edges_.empty() && g.edges_.back().source == e.source &&
        g.edges_.back().target == e.target) {
      g.edges_.back().weight += e.weight;
    } else {
      g.edges_.push_back(e);
    }
  }

  g.offsets_.assign(node_count + 1, 0);
  g.out_strength_.assign(node_count, 0.0);
  g.in_strength_.assign(node_count, 0.0);
  g.in_degree_.assign(node_count, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.source + 1];
    g.out_strength_[e.source] += e.weight;
    g.in_strength_[e.target] += e.weight;
    ++g.in_degree_[e.target];
    g.total_weight_ += e.weight;
  }
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.symmetric_ = std::all_of(g.edges_.begin(), g.edges_.end(), [&g](const Edge& e) {
    return g.weight(e.target, e.source) == e.weight;
  });
  return g;
}

DirectedGraph DirectedGraph::undirected_from_edges(std::size_t node_count,
                                                   const std::vector<Edge>& edges,
                                                   std::optional<LabelIndex> labels) {
  std::vector<Edge> mirrored;
  mirrored.reserve(2 * edges.size());
  for (const auto& e : edges) {
    mirrored.push_back(e);
    if (e.source != e.target) mirrored.push_back({e.target, e.source, e.weight});
  }
  return from_edges(node_count, std::move(mirrored), std::move(labels));
}

std::span<const Edge> DirectedGraph::out_edges(NodeId node) const {
  return std::span<const Edge>(edges_).subspan(offsets_[node], offsets_[node + 1] - offsets_[node]);
}

double DirectedGraph::weight(NodeId source, NodeId target) const {
  const auto row = out_edges(source);
  const auto it = std::lower_bound(row.begin(), row.end(), target,
                                   [](const Edge& e, NodeId t) { return e.target < t; });
  return it != row.end() && it->target == target ? it->weight : 0.0;
}

bool DirectedGraph::is_weakly_connected() const {
  if (node_count_ == 0) return true;
  std::vector<std::vector<NodeId>> neighbors(node_count_);
  for (const auto& e : edges_) {
    neighbors[e.source].push_back(e.target);
    neighbors[e.target].push_back(e.source);
  }
  std::vector<bool> seen(node_count_, false);
  std::deque<NodeId> queue{0};
  seen[0] = true;
  std::size_t visited = 1;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : neighbors[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++visited;
        queue.push_back(v);
      }
    }
  }
  return visited == node_count_;
}

DirectedGraph DirectedGraph::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("scale factor must be positive");
  std::vector<Edge> edges(edges_.begin(), edges_.end());
  for (auto& e : edges) e.weight *= factor;
  return from_edges(node_count_, std::move(edges), labels_);
}

DirectedGraph load_directed_graph(std::string_view text, const ParseOptions& options) {
  LabelIndex labels;
  std::vector<Edge> edges;
  for (const auto& line : detail::split_tab_lines(text)) {
    if (line.fields.size() < 2 || line.fields.size() > 3) {
      throw ParseError(line.number, "expected source<TAB>target[<TAB>weight], got " +
                                        std::to_string(line.fields.size()) + " field(s)");
    }
    if (line.fields[0].empty() || line.fields[1].empty()) {
      throw ParseError(line.number, "empty node label");
    }
    double weight = 1.0;
    if (line.fields.size() == 3) {
      weight = detail::parse_real(line.fields[2], line.number, "weight");
      if (weight < 0.0) {
        throw DomainError("line " + std::to_string(line.number) + ": negative weight " +
                          std::string(line.fields[2]));
      }
    }
    const NodeId source = labels.intern(line.fields[0]);
    const NodeId target = labels.intern(line.fields[1]);
    edges.push_back({source, target, weight});
    if (options.undirected && source != target) edges.push_back({target, source, weight});
  }
  const std::size_t n = labels.size();
  return DirectedGraph::from_edges(n, std::move(edges), std::move(labels));
}

DirectedGraph read_directed_graph(const std::string& path, const ParseOptions& options) {
  return load_directed_graph(read_text_file(path), options);
}

std::string serialize(const DirectedGraph& graph) {
  // Labels are interned in first-seen order on load. A node whose first
  // appearance would come too early is declared beforehand by a zero-weight
  // self-loop, which the loader drops after interning the label.
  std::string out;
  const std::size_t n = graph.node_count();
  std::vector<bool> seen(n, false);
  NodeId next_unseen = 0;
  const auto advance = [&] {
    while (next_unseen < n && seen[next_unseen]) ++next_unseen;
  };
  const auto declare_through = [&](NodeId last) {
    for (NodeId v = next_unseen; v <= last; ++v) {
      if (seen[v]) continue;
      const auto& l = graph.label(v);
      out += l + '\t' + l + "\t0\n";
      seen[v] = true;
    }
    advance();
  };

  for (const auto& e : graph.edges()) {
    // The edge line itself interns its endpoints in order; that is only
    // correct when each unseen endpoint is the next id due.
    bool in_order = true;
    NodeId due = next_unseen;
    for (NodeId u : {e.source, e.target}) {
      if (seen[u] || (u == e.target && u == e.source)) continue;
      if (u != due) {
        in_order = false;
        break;
      }
      ++due;
      while (due < n && seen[due]) ++due;
    }
    if (in_order) {
      seen[e.source] = true;
      seen[e.target] = true;
      advance();
    } else {
      declare_through(std::max(e.source, e.target));
    }
    out += graph.label(e.source) + '\t' + graph.label(e.target) + '\t' +
           format_double(e.weight) + '\n';
  }
  if (n > 0) declare_through(n - 1);
  return out;
}

DirectedGraph add_ground_node(const DirectedGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  edges.reserve(edges.size() + 2 * n);
  for (NodeId i = 0; i < n; ++i) {
    edges.push_back({i, n, 1.0});
    edges.push_back({n, i, 1.0});
  }
  LabelIndex labels = graph.labels();
  std::string ground = "<ground>";
  while (labels.find(ground)) ground += '_';
  labels.intern(ground);
  return DirectedGraph::from_edges(n + 1, std::move(edges), std::move(labels));
}

std::vector<bool> reachable_from(const DirectedGraph& graph, NodeId start) {
  std::vector<bool> seen(graph.node_count(), false);
  std::vector<NodeId> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const auto& e : graph.out_edges(u)) {
      if (!seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  return seen;
}

}  // namespace walkrank
