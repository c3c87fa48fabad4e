#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ccnacct/core/lpm.hpp"
#include "ccnacct/core/message.hpp"

namespace ccnacct {

using FaceId = std::uint32_t;
using RouterId = Bytes;

struct CsEntry {
  ContentObject content;
  Tick inserted_at;
  Tick expires_at;  // inserted_at + content.expiry_time()
};

// Content Store with per-entry expiry and optional LRU capacity bound.
class ContentStore {
 public:
  explicit ContentStore(std::optional<std::size_t> capacity = std::nullopt);

  // Live entry for `name`, refreshing its LRU position. Entries with
  // expires_at <= now are treated as absent and removed.
  const CsEntry* find(const Name& name, Tick now);

  // Caches `co` (must be cacheable). Replaces an existing entry for the same
  // name; evicts the least recently used entry when full.
  void insert(const ContentObject& co, Tick now);

  // Removes every entry with expires_at <= now.
  std::size_t evict_expired(Tick now);

  std::size_t size() const { return index_.size(); }
  std::optional<std::size_t> capacity() const { return capacity_; }
  bool contains(const Name& name) const { return index_.contains(name); }

  // Entries from most to least recently used.
  std::vector<CsEntry> snapshot() const;

 private:
  using Lru = std::list<CsEntry>;
  std::optional<std::size_t> capacity_;
  Lru lru_;
  std::unordered_map<Name, Lru::iterator, NameHash> index_;
};

struct PitArrival {
  FaceId face;
  Bytes payload;  // empty when the interest carried no CrSD
  bool forwarded;

  friend bool operator==(const PitArrival&, const PitArrival&) = default;
};

struct PitEntry {
  Name name;
  std::vector<PitArrival> arrivals;

  std::size_t collapsed_count() const;
  std::size_t forwarded_count() const;
  // Distinct arrival faces, in first-arrival order.
  std::vector<FaceId> downstream_faces() const;

  friend bool operator==(const PitEntry&, const PitEntry&) = default;
};

using Pit = std::unordered_map<Name, PitEntry, NameHash>;

struct FibEntry {
  Name prefix;
  std::vector<FaceId> next_hops;  // never empty
};

class Fib {
 public:
  // Throws ConfigError on an empty next-hop list or a duplicate prefix.
  void add(Name prefix, std::vector<FaceId> next_hops);
  const FibEntry* lookup(const Name& name) const;
  std::size_t size() const { return table_.size(); }

 private:
  PrefixTable<FibEntry> table_;
};

}  // namespace ccnacct
