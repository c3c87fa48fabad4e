#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccnacct/node/node.hpp"
#include "ccnacct/producer/producer.hpp"
#include "ccnacct/sim/config.hpp"

namespace ccnacct {

// Indexed by MessageType - 1: interest, content, pint, nack.
using TypeCounts = std::array<std::uint64_t, 4>;

std::uint64_t sum(const TypeCounts& counts);

struct NodeMetrics {
  std::string id;
  Role role;
  std::size_t distance;
  TypeCounts received{};
  TypeCounts sent{};
  NodeStats stats;  // routers only
};

struct LinkMetrics {
  std::string a;
  std::string b;
  TypeCounts forward{};   // a -> b
  TypeCounts backward{};  // b -> a
  TypeCounts bytes{};     // both directions
  std::uint64_t lost = 0;

  std::uint64_t messages() const { return sum(forward) + sum(backward); }
};

struct ConsumerTotals {
  std::uint64_t interests = 0;      // content requests
  std::uint64_t key_interests = 0;  // encryption scheme
  std::uint64_t contents = 0;
  std::uint64_t keys = 0;
  std::uint64_t nacks = 0;
};

struct ProducerMetrics {
  std::string id;
  std::uint64_t interests = 0;      // content interests served or NACKed
  std::uint64_t key_interests = 0;
  std::uint64_t pints = 0;
  std::uint64_t pint_count = 0;     // sum of pInt counts
  std::uint64_t nacks = 0;
  std::uint64_t aggregate_total = 0;
  std::uint64_t aggregate_direct = 0;
  std::uint64_t distinct_accepted = 0;
  std::uint64_t distinct_duplicates = 0;
  std::uint64_t individual_total = 0;
  std::uint64_t ignored = 0;
  std::map<std::string, std::uint64_t> rejections_by_origin;
  std::map<std::string, std::uint64_t> rejections_by_reason;
  std::vector<LedgerRow> ledger;

  std::uint64_t rejections() const;
};

struct AdversaryMetrics {
  std::string router;
  AdversaryBehavior behavior;
  std::uint64_t injected = 0;
  std::uint64_t captured = 0;  // replay candidates observed
};

struct MetricsReport {
  std::uint64_t seed = 0;
  Tick end_tick = 0;
  std::uint64_t events = 0;
  std::vector<NodeMetrics> nodes;
  std::vector<LinkMetrics> links;
  ConsumerTotals consumers;
  std::vector<ProducerMetrics> producers;
  std::optional<AdversaryMetrics> adversary;

  // Derived. The identity (producer interests + honest pInt counts = issued
  // interests, or key fetches = issued interests for the encryption scheme)
  // is only expected on loss-free, multicast-free runs with accounting on.
  bool conservation_checked = false;
  bool conservation_ok = false;
  std::uint64_t cache_hits = 0;
  std::uint64_t upstream_routers = 0;
  double upstream_pint_fraction = 0.0;

  const LinkMetrics& link(const std::string& a, const std::string& b) const;
  const NodeMetrics& node(const std::string& id) const;
  std::uint64_t producer_interests() const;
  std::uint64_t producer_pint_count() const;
  std::uint64_t rejections() const;

  // Long format: kind,id,metric,value
  void write_csv(std::ostream& out) const;
  // producer,name,type,consumer,count,duplicates,rejections
  void write_ledger_csv(std::ostream& out) const;
  std::string csv() const;
};

// seed,interests,producer_interests,pint_count,cache_hits,upstream_pint_fraction,rejections,conservation_ok
void write_summary_csv(std::ostream& out, const std::vector<MetricsReport>& reports);

}  // namespace ccnacct
