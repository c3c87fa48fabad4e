#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccnacct/analytic/analytic.hpp"
#include "ccnacct/core/message.hpp"
#include "ccnacct/producer/producer.hpp"
#include "ccnacct/sim/topology.hpp"

namespace ccnacct {

inline constexpr Tick kTicksPerSecond = 1000;

enum class ArrivalModel : std::uint8_t { kPoisson, kDeterministic };
enum class Prewarm : std::uint8_t { kNone, kFirstHop, kAllRouters };
enum class AdversaryBehavior : std::uint8_t { kForgePint, kReplayCrsd };

std::string_view to_string(ArrivalModel model);
std::string_view to_string(Prewarm prewarm);
std::string_view to_string(AdversaryBehavior behavior);

struct TrafficSpec {
  double rate = 10.0;              // interests per second per consumer (Poisson)
  std::uint32_t pool = 10;         // names /<prefix>/0 .. /<prefix>/(pool-1)
  Tick duration = 10 * kTicksPerSecond;
  std::uint64_t seed = 1;
  bool collapsing = true;
  bool multicast = false;
  AcctFlag acct = AcctFlag::kAggregate;
  Scheme scheme = Scheme::kPint;
  ArrivalModel arrivals = ArrivalModel::kPoisson;
  Tick interval = 100;             // deterministic spacing
  std::uint64_t max_requests = 0;  // per consumer; 0 = unbounded
  Tick batch_window = 0;
  bool blind_nonce = true;         // attach a nonce even when not required
  bool omit_crsd = false;          // INDIVIDUAL interests sent bare (exercises NACKs)
};

struct AdversarySpec {
  std::string router;
  AdversaryBehavior behavior = AdversaryBehavior::kForgePint;
  double rate = 100.0;             // injections per second
  std::uint64_t max_count = 100;
  Tick start = 0;
};

struct SimConfig {
  Topology topology;
  TrafficSpec traffic;
  // Template for every producer; prefix and keys are filled per run.
  ProducerConfig producer;
  Prewarm prewarm = Prewarm::kNone;
  std::optional<AdversarySpec> adversary;
  std::optional<std::size_t> cache_capacity;
  double loss = 0.0;               // per-link drop probability
  std::uint64_t key_seed = 1;

  // Throws ConfigError describing the first invalid setting.
  void validate() const;
};

// key=value scenario file; see docs/formats.md for the keys.
struct Scenario {
  SimConfig config;
  std::vector<std::uint64_t> seeds;
  std::string output_dir = "out";
  std::string topology_source;
};

// Relative topology paths resolve against base_dir. "gen:path:<n>" and
// "gen:tree:<h>" select the built-in generators.
Scenario parse_scenario(std::istream& in, const std::string& base_dir,
                        const std::string& source = "<input>");
Scenario load_scenario(const std::string& path);

}  // namespace ccnacct
