#include "ccnacct/node/node.hpp"

#include <limits>

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

Bytes take_crsd(const Bytes& payload, MissingCrsdPolicy policy, const Name& name) {
  if (payload.empty() && policy == MissingCrsdPolicy::kReject) {
    throw MissingCrsd(fmt::format("interest for {} carries no CrSD", name.to_uri()));
  }
  return payload;
}

}  // namespace

PInt generate_pint(const ContentObject& co, const Interest* trigger, const PitEntry* entry,
                   const RouterId& router, bool cache_hit, MissingCrsdPolicy policy) {
  if (co.acct() == AcctFlag::kNone) throw FieldError("content is not accountable");
  const bool wants_cdata = co.acct() != AcctFlag::kAggregate;
  std::vector<Bytes> cdata;
  std::uint32_t count = 0;
  if (cache_hit) {
    if (trigger == nullptr) throw FieldError("cache-hit pInt needs the triggering interest");
    if (wants_cdata) cdata.push_back(take_crsd(trigger->payload(), policy, co.name()));
    count = 1;
  } else {
    if (entry == nullptr) throw FieldError("collapse pInt needs the PIT entry");
    for (const auto& arrival : entry->arrivals) {
      if (arrival.forwarded) continue;
      if (wants_cdata) cdata.push_back(take_crsd(arrival.payload, policy, co.name()));
      ++count;
    }
  }
  return PInt(co.name(), co.acct(), router, count, std::move(cdata));
}

Node::Node(NodeConfig config) : config_(std::move(config)), cs_(config_.cache_capacity) {}

std::vector<Outgoing> Node::on_interest(const Interest& interest, FaceId from) {
  std::vector<Outgoing> out;
  const Name& name = interest.name();

  if (config_.caching) {
    if (const CsEntry* hit = cs_.find(name, clock_)) {
      ++stats_.cache_hits;
      const ContentObject co = hit->content;
      out.push_back({from, co});
      if (co.acct() != AcctFlag::kNone) {
        ++stats_.accountable_cache_hits;
        try {
          PInt pint = generate_pint(co, &interest, nullptr, config_.id, true, config_.missing_crsd);
          ++stats_.hit_pints;
          emit_pint(std::move(pint), out);
        } catch (const MissingCrsd&) {
          ++stats_.missing_crsd_drops;
        }
      }
      return out;
    }
  }

  auto pending = pit_.find(name);
  if (pending != pit_.end() && config_.collapsing) {
    pending->second.arrivals.push_back({from, interest.payload(), false});
    return out;
  }

  const FibEntry* route = fib_.lookup(name);
  if (route == nullptr) {
    ++stats_.no_route_drops;
    return out;
  }
  if (pending == pit_.end()) {
    pending = pit_.emplace(name, PitEntry{name, {}}).first;
  }
  pending->second.arrivals.push_back({from, interest.payload(), true});

  if (config_.multicast) {
    for (FaceId hop : route->next_hops) {
      if (hop != from) out.push_back({hop, interest});
    }
  } else {
    out.push_back({route->next_hops.front(), interest});
  }
  return out;
}

std::vector<Outgoing> Node::on_content(const ContentObject& co, FaceId /*from*/) {
  std::vector<Outgoing> out;
  auto pending = pit_.find(co.name());
  if (pending == pit_.end()) {
    ++stats_.unsolicited_drops;
    return out;
  }
  PitEntry entry = std::move(pending->second);
  pit_.erase(pending);

  for (FaceId face : entry.downstream_faces()) out.push_back({face, co});

  if (co.acct() != AcctFlag::kNone && entry.collapsed_count() > 0) {
    try {
      PInt pint = generate_pint(co, nullptr, &entry, config_.id, false, config_.missing_crsd);
      ++stats_.collapse_pints;
      emit_pint(std::move(pint), out);
    } catch (const MissingCrsd&) {
      ++stats_.missing_crsd_drops;
    }
  }

  if (config_.caching && co.cacheable()) cs_.insert(co, clock_);
  return out;
}

std::vector<Outgoing> Node::on_nack(const Nack& nack, FaceId /*from*/) {
  std::vector<Outgoing> out;
  auto pending = pit_.find(nack.name());
  if (pending == pit_.end()) {
    ++stats_.unsolicited_drops;
    return out;
  }
  for (FaceId face : pending->second.downstream_faces()) out.push_back({face, nack});
  pit_.erase(pending);
  return out;
}

std::vector<Outgoing> Node::on_pint(const PInt& pint, FaceId /*from*/) {
  std::vector<Outgoing> out;
  const FibEntry* route = fib_.lookup(pint.name());
  if (route == nullptr) {
    ++stats_.pint_no_route_drops;
    return out;
  }
  out.push_back({route->next_hops.front(), pint});
  return out;
}

void Node::emit_pint(PInt pint, std::vector<Outgoing>& out) {
  if (config_.batch_window == 0) {
    route_pint(std::move(pint), out);
    return;
  }
  auto it = batches_.find(pint.name());
  if (it != batches_.end()) {
    Batch& b = it->second;
    const bool list_full = b.cdata.size() + pint.cdata().size() > kMaxListLength;
    const bool count_full =
        b.count + pint.count() > std::numeric_limits<std::uint32_t>::max();
    if (list_full || count_full) {
      close_batch(it->first, b, out);
      batches_.erase(it);
      it = batches_.end();
    }
  }
  if (it == batches_.end()) {
    it = batches_.emplace(pint.name(), Batch{pint.type(), 0, {}, clock_ + config_.batch_window})
             .first;
  }
  Batch& b = it->second;
  b.count += pint.count();
  for (const auto& c : pint.cdata()) b.cdata.push_back(c);
}

void Node::route_pint(PInt pint, std::vector<Outgoing>& out) {
  const FibEntry* route = fib_.lookup(pint.name());
  if (route == nullptr) {
    ++stats_.pint_no_route_drops;
    return;
  }
  stats_.pint_count_emitted += pint.count();
  out.push_back({route->next_hops.front(), std::move(pint)});
}

void Node::close_batch(const Name& name, Batch& batch, std::vector<Outgoing>& out) {
  ++stats_.batched_pints;
  route_pint(PInt(name, batch.type, config_.id, static_cast<std::uint32_t>(batch.count),
                  std::move(batch.cdata)),
             out);
}

std::vector<Outgoing> Node::flush_batches() {
  std::vector<Outgoing> out;
  for (auto it = batches_.begin(); it != batches_.end();) {
    if (it->second.closes_at <= clock_) {
      close_batch(it->first, it->second, out);
      it = batches_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::optional<Tick> Node::next_batch_deadline() const {
  std::optional<Tick> earliest;
  for (const auto& [name, b] : batches_) {
    if (!earliest || b.closes_at < *earliest) earliest = b.closes_at;
  }
  return earliest;
}

void Node::preload(const ContentObject& co) {
  if (config_.caching && co.cacheable()) cs_.insert(co, clock_);
}

}  // namespace ccnacct
