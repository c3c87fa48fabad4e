#include "ccnacct/node/tables.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

ContentStore::ContentStore(std::optional<std::size_t> capacity) : capacity_(capacity) {
  if (capacity_ && *capacity_ == 0) throw ConfigError("cache capacity must be positive");
}

const CsEntry* ContentStore::find(const Name& name, Tick now) {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  if (it->second->expires_at <= now) {
    lru_.erase(it->second);
    index_.erase(it);
    return nullptr;
  }
  lru_.splice(lru_.begin(), lru_, it->second);
  return &*it->second;
}

void ContentStore::insert(const ContentObject& co, Tick now) {
  if (!co.cacheable()) return;
  if (auto it = index_.find(co.name()); it != index_.end()) {
    lru_.erase(it->second);
    index_.erase(it);
  }
  if (capacity_ && index_.size() >= *capacity_) {
    index_.erase(lru_.back().content.name());
    lru_.pop_back();
  }
  lru_.push_front(CsEntry{co, now, now + co.expiry_time()});
  index_.emplace(co.name(), lru_.begin());
}

std::size_t ContentStore::evict_expired(Tick now) {
  std::size_t evicted = 0;
  for (auto it = lru_.begin(); it != lru_.end();) {
    if (it->expires_at <= now) {
      index_.erase(it->content.name());
      it = lru_.erase(it);
      ++evicted;
    } else {
      ++it;
    }
  }
  return evicted;
}

std::vector<CsEntry> ContentStore::snapshot() const { return {lru_.begin(), lru_.end()}; }

std::size_t PitEntry::collapsed_count() const {
  return static_cast<std::size_t>(
      std::count_if(arrivals.begin(), arrivals.end(), [](const auto& a) { return !a.forwarded; }));
}

std::size_t PitEntry::forwarded_count() const { return arrivals.size() - collapsed_count(); }

std::vector<FaceId> PitEntry::downstream_faces() const {
  std::vector<FaceId> faces;
  for (const auto& a : arrivals) {
    if (std::find(faces.begin(), faces.end(), a.face) == faces.end()) faces.push_back(a.face);
  }
  return faces;
}

void Fib::add(Name prefix, std::vector<FaceId> next_hops) {
  if (next_hops.empty()) {
    throw ConfigError(fmt::format("FIB entry {} has no next hops", prefix.to_uri()));
  }
  const std::string uri = prefix.to_uri();
  FibEntry entry{prefix, std::move(next_hops)};
  if (!table_.insert(std::move(prefix), std::move(entry))) {
    throw ConfigError(fmt::format("duplicate FIB prefix {}", uri));
  }
}

const FibEntry* Fib::lookup(const Name& name) const {
  const auto* hit = table_.longest_match(name);
  return hit ? &hit->second : nullptr;
}

}  // namespace ccnacct
