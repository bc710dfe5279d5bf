#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "walkrank/graph.hpp"

namespace walkrank {

struct RatingEntry {
  NodeId user;
  NodeId item;
  std::optional<double> rating;
  std::optional<std::int64_t> timestamp;
};

/// User-item network with optional ratings and timestamps.
///
/// At most one entry exists per (user, item) pair. Adjacency is available
/// from both sides and degrees are cached.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Later duplicates of a (user, item) pair replace earlier ones; each
  /// replacement is reported through `warnings` when provided.
  static BipartiteGraph from_entries(std::size_t user_count, std::size_t item_count,
                                     std::vector<RatingEntry> entries,
                                     std::optional<LabelIndex> user_labels = std::nullopt,
                                     std::optional<LabelIndex> item_labels = std::nullopt,
                                     const WarningSink& warnings = {});

  std::size_t user_count() const noexcept { return user_count_; }
  std::size_t item_count() const noexcept { return item_count_; }
  std::size_t entry_count() const noexcept { return entries_.size(); }

  /// Entries sorted by (user, item).
  std::span<const RatingEntry> entries() const noexcept { return entries_; }
  /// Entries of one user, sorted by item.
  std::span<const RatingEntry> user_entries(NodeId user) const;

  std::span<const NodeId> items_of(NodeId user) const;
  std::span<const NodeId> users_of(NodeId item) const;
  std::size_t user_degree(NodeId user) const { return items_of(user).size(); }
  std::size_t item_degree(NodeId item) const { return users_of(item).size(); }

  bool has_link(NodeId user, NodeId item) const;
  std::optional<double> rating(NodeId user, NodeId item) const;
  /// True when every entry carries a rating.
  bool has_ratings() const noexcept { return fully_rated_; }
  /// Mean over the user's rated entries; nullopt when the user rated nothing.
  std::optional<double> mean_rating(NodeId user) const;

  const LabelIndex& user_labels() const noexcept { return user_labels_; }
  const LabelIndex& item_labels() const noexcept { return item_labels_; }

  /// Copy keeping only entries for which `keep` returns true. Labels and the
  /// user/item id spaces are preserved.
  template <class Predicate>
  BipartiteGraph filtered(Predicate keep) const {
    std::vector<RatingEntry> kept;
    for (const auto& e : entries_) {
      if (keep(e)) kept.push_back(e);
    }
    return from_entries(user_count_, item_count_, std::move(kept), user_labels_, item_labels_);
  }

 private:
  std::size_t user_count_ = 0;
  std::size_t item_count_ = 0;
  std::vector<RatingEntry> entries_;
  std::vector<std::size_t> user_offsets_{0};
  std::vector<NodeId> user_items_;
  std::vector<std::size_t> item_offsets_{0};
  std::vector<NodeId> item_users_;
  bool fully_rated_ = false;
  LabelIndex user_labels_;
  LabelIndex item_labels_;
};

/// Parses `user<TAB>item[<TAB>rating[<TAB>timestamp]]` lines.
BipartiteGraph load_bipartite(std::string_view text, const WarningSink& warnings = {});
BipartiteGraph read_bipartite(const std::string& path, const WarningSink& warnings = {});

}  // namespace walkrank
