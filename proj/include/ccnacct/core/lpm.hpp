#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>
#include <algorithm>

#include "ccnacct/core/name.hpp"

namespace ccnacct {

// Value of the longest prefix of `name` present in `table`, or nothing.
// Prefixes in the table are assumed unique.
template <class V>
std::optional<V> longest_prefix_match(std::span<const std::pair<Name, V>> table,
                                      const Name& name) {
  const std::pair<Name, V>* best = nullptr;
  for (const auto& row : table) {
    if (row.first.is_prefix_of(name) &&
        (best == nullptr || row.first.size() > best->first.size())) {
      best = &row;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->second;
}

// Hash-indexed prefix table: lookup probes the query's prefixes from the
// longest down, so cost is bounded by the name depth, not the table size.
template <class V>
class PrefixTable {
 public:
  // Returns false if the prefix was already present.
  bool insert(Name prefix, V value) {
    const std::size_t depth = prefix.size();
    const bool inserted = map_.try_emplace(std::move(prefix), std::move(value)).second;
    if (inserted && depth + 1 > depth_counts_.size()) depth_counts_.resize(depth + 1);
    if (inserted) ++depth_counts_[depth];
    return inserted;
  }

  const V* find_exact(const Name& prefix) const {
    auto it = map_.find(prefix);
    return it == map_.end() ? nullptr : &it->second;
  }

  const std::pair<const Name, V>* longest_match(const Name& name) const {
    std::size_t n = std::min(name.size(), depth_counts_.empty() ? 0 : depth_counts_.size() - 1);
    for (std::size_t len = n + 1; len-- > 0;) {
      if (depth_counts_.empty() || depth_counts_[len] == 0) continue;
      auto it = map_.find(name.prefix(len));
      if (it != map_.end()) return &*it;
    }
    return nullptr;
  }

  std::size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

 private:
  std::unordered_map<Name, V, NameHash> map_;
  std::vector<std::size_t> depth_counts_;
};

}  // namespace ccnacct
