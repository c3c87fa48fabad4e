#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ccnacct/node/tables.hpp"

namespace ccnacct {

// What a router does when a DISTINCT/INDIVIDUAL interest arrives without a
// CrSD payload. Routers are oblivious to accounting types, so the default
// copies an empty blob and leaves rejection to the producer.
enum class MissingCrsdPolicy { kSubstituteEmpty, kReject };

struct NodeConfig {
  RouterId id;
  bool multicast = false;   // forward interests to every next hop
  bool collapsing = true;   // false: every interest is forwarded upstream
  bool caching = true;
  std::optional<std::size_t> cache_capacity;
  Tick batch_window = 0;    // 0 emits pInts immediately
  MissingCrsdPolicy missing_crsd = MissingCrsdPolicy::kSubstituteEmpty;
};

struct NodeStats {
  std::uint64_t cache_hits = 0;
  std::uint64_t accountable_cache_hits = 0;
  std::uint64_t hit_pints = 0;        // generated on a cache hit (count = 1)
  std::uint64_t collapse_pints = 0;   // generated for collapsed interests
  std::uint64_t batched_pints = 0;    // emitted from a batching window
  std::uint64_t pint_count_emitted = 0;
  std::uint64_t no_route_drops = 0;        // interests
  std::uint64_t pint_no_route_drops = 0;
  std::uint64_t unsolicited_drops = 0;
  std::uint64_t missing_crsd_drops = 0;  // pInts suppressed under kReject
};

struct Outgoing {
  FaceId face;
  Message message;
};

// Builds the pInt for one accounting event.
//  cache_hit:  count 1, cdata = [trigger payload] (DISTINCT/INDIVIDUAL).
//  otherwise:  one entry per collapsed (non-forwarded) arrival, in order.
// AGGREGATE pInts never carry cdata. Throws MissingCrsd under kReject when a
// contributing interest has no payload, and FieldError if nothing would be
// reported.
PInt generate_pint(const ContentObject& co, const Interest* trigger, const PitEntry* entry,
                   const RouterId& router, bool cache_hit,
                   MissingCrsdPolicy policy = MissingCrsdPolicy::kSubstituteEmpty);

// Forwarding state machine of one CCN router.
class Node {
 public:
  explicit Node(NodeConfig config);

  const NodeConfig& config() const { return config_; }
  const RouterId& id() const { return config_.id; }

  Tick clock() const { return clock_; }
  void set_clock(Tick now) { clock_ = now; }

  Fib& fib() { return fib_; }
  const Fib& fib() const { return fib_; }
  const ContentStore& cs() const { return cs_; }
  const Pit& pit() const { return pit_; }
  const NodeStats& stats() const { return stats_; }

  std::vector<Outgoing> on_interest(const Interest& interest, FaceId from);
  std::vector<Outgoing> on_content(const ContentObject& co, FaceId from);
  std::vector<Outgoing> on_pint(const PInt& pint, FaceId from);
  // Passes a NACK to every face waiting on the name and clears the entry.
  std::vector<Outgoing> on_nack(const Nack& nack, FaceId from);

  // Emits every batch whose window closed at or before the current clock.
  std::vector<Outgoing> flush_batches();
  // Earliest close time among open batches.
  std::optional<Tick> next_batch_deadline() const;

  std::size_t evict_expired() { return cs_.evict_expired(clock_); }

  // Places content in the cache as if it had just arrived.
  void preload(const ContentObject& co);

 private:
  struct Batch {
    AcctFlag type;
    std::uint64_t count = 0;
    std::vector<Bytes> cdata;
    Tick closes_at;
  };

  void emit_pint(PInt pint, std::vector<Outgoing>& out);
  void route_pint(PInt pint, std::vector<Outgoing>& out);
  void close_batch(const Name& name, Batch& batch, std::vector<Outgoing>& out);

  NodeConfig config_;
  Tick clock_ = 0;
  ContentStore cs_;
  Pit pit_;
  Fib fib_;
  NodeStats stats_;
  std::map<Name, Batch> batches_;
};

}  // namespace ccnacct
