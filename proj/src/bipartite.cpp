#include "walkrank/bipartite.hpp"

#include <algorithm>
#include <cmath>

#include "walkrank/io.hpp"

namespace walkrank {

BipartiteGraph BipartiteGraph::from_entries(std::size_t user_count, std::size_t item_count,
                                            std::vector<RatingEntry> entries,
                                            std::optional<LabelIndex> user_labels,
                                            std::optional<LabelIndex> item_labels,
                                            const WarningSink& warnings) {
  BipartiteGraph b;
  b.user_count_ = user_count;
  b.item_count_ = item_count;
  b.user_labels_ = user_labels ? std::move(*user_labels) : LabelIndex::numbered(user_count);
  b.item_labels_ = item_labels ? std::move(*item_labels) : LabelIndex::numbered(item_count);
  if (b.user_labels_.size() != user_count || b.item_labels_.size() != item_count) {
    throw DomainError("label count does not match user/item count");
  }
  for (const auto& e : entries) {
    if (e.user >= user_count || e.item >= item_count) {
      throw DomainError("rating entry id out of range");
    }
    if (e.rating && !std::isfinite(*e.rating)) throw DomainError("non-finite rating");
  }

  // Stable sort keeps input order among duplicates so that the last one wins.
  std::stable_sort(entries.begin(), entries.end(), [](const RatingEntry& a, const RatingEntry& c) {
    return a.user != c.user ? a.user < c.user : a.item < c.item;
  });
  for (auto& e : entries) {
    if (!b.entries_.empty() && b.entries_.back().user == e.user &&
        b.entries_.back().item == e.item) {
      if (warnings) {
        warnings("duplicate entry for user '" + b.user_labels_.label(e.user) + "' and item '" +
                 b.item_labels_.label(e.item) + "': keeping the last one");
      }
      b.entries_.back() = e;
    } else {
      b.entries_.push_back(e);
    }
  }

  b.user_offsets_.assign(user_count + 1, 0);
  b.item_offsets_.assign(item_count + 1, 0);
  for (const auto& e : b.entries_) {
    ++b.user_offsets_[e.user + 1];
    ++b.item_offsets_[e.item + 1];
  }
  for (std::size_t u = 0; u < user_count; ++u) b.user_offsets_[u + 1] += b.user_offsets_[u];
  for (std::size_t a = 0; a < item_count; ++a) b.item_offsets_[a + 1] += b.item_offsets_[a];

  b.user_items_.resize(b.entries_.size());
  b.item_users_.resize(b.entries_.size());
  std::vector<std::size_t> fill(b.item_offsets_.begin(), b.item_offsets_.end() - 1);
  for (std::size_t k = 0; k < b.entries_.size(); ++k) {
    const auto& e = b.entries_[k];
    b.user_items_[k] = e.item;
    b.item_users_[fill[e.item]++] = e.user;
  }
  b.fully_rated_ = !b.entries_.empty() &&
                   std::all_of(b.entries_.begin(), b.entries_.end(),
                               [](const RatingEntry& e) { return e.rating.has_value(); });
  return b;
}

std::span<const RatingEntry> BipartiteGraph::user_entries(NodeId user) const {
  return std::span<const RatingEntry>(entries_).subspan(
      user_offsets_.at(user), user_offsets_[user + 1] - user_offsets_[user]);
}

std::span<const NodeId> BipartiteGraph::items_of(NodeId user) const {
  return std::span<const NodeId>(user_items_)
      .subspan(user_offsets_.at(user), user_offsets_[user + 1] - user_offsets_[user]);
}

std::span<const NodeId> BipartiteGraph::users_of(NodeId item) const {
  return std::span<const NodeId>(item_users_)
      .subspan(item_offsets_.at(item), item_offsets_[item + 1] - item_offsets_[item]);
}

bool BipartiteGraph::has_link(NodeId user, NodeId item) const {
  const auto items = items_of(user);
  return std::binary_search(items.begin(), items.end(), item);
}

std::optional<double> BipartiteGraph::rating(NodeId user, NodeId item) const {
  const auto row = user_entries(user);
  const auto it = std::lower_bound(row.begin(), row.end(), item,
                                   [](const RatingEntry& e, NodeId a) { return e.item < a; });
  if (it == row.end() || it->item != item) return std::nullopt;
  return it->rating;
}

std::optional<double> BipartiteGraph::mean_rating(NodeId user) const {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& e : user_entries(user)) {
    if (e.rating) {
      total += *e.rating;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return total / static_cast<double>(count);
}

BipartiteGraph load_bipartite(std::string_view text, const WarningSink& warnings) {
  LabelIndex users;
  LabelIndex items;
  std::vector<RatingEntry> entries;
  for (const auto& line : detail::split_tab_lines(text)) {
    if (line.fields.size() < 2 || line.fields.size() > 4) {
      throw ParseError(line.number, "expected user<TAB>item[<TAB>rating[<TAB>timestamp]], got " +
                                        std::to_string(line.fields.size()) + " field(s)");
    }
    if (line.fields[0].empty() || line.fields[1].empty()) {
      throw ParseError(line.number, "empty user or item label");
    }
    RatingEntry entry{users.intern(line.fields[0]), items.intern(line.fields[1]), {}, {}};
    if (line.fields.size() >= 3) {
      entry.rating = detail::parse_real(line.fields[2], line.number, "rating");
    }
    if (line.fields.size() == 4) {
      entry.timestamp = detail::parse_integer(line.fields[3], line.number, "timestamp");
    }
    entries.push_back(entry);
  }
  const std::size_t nu = users.size();
  const std::size_t ni = items.size();
  return BipartiteGraph::from_entries(nu, ni, std::move(entries), std::move(users),
                                      std::move(items), warnings);
}

BipartiteGraph read_bipartite(const std::string& path, const WarningSink& warnings) {
  return load_bipartite(read_text_file(path), warnings);
}

}  // namespace walkrank
