#include "ccnacct/sim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("{}: expected a non-negative integer, got '{}'", key, value));
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used == value.size()) return out;
  } catch (const std::logic_error&) {
  }
  throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, value));
}

bool to_bool(const std::string& key, const std::string& value) {
  const auto v = lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(fmt::format("{}: expected a boolean, got '{}'", key, value));
}

template <typename F>
auto field(const std::string& key, F&& parse) {
  try {
    return parse();
  } catch (const FieldError& e) {
    throw ConfigError(fmt::format("{}: {}", key, e.what()));
  }
}

Topology resolve_topology(const std::string& value, const std::string& base_dir) {
  if (value.starts_with("gen:")) {
    const auto rest = value.substr(4);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError(fmt::format("bad generator '{}'", value));
    const auto kind = rest.substr(0, colon);
    const auto size = to_u64("topology", rest.substr(colon + 1));
    if (kind == "path") return Topology::path(size);
    if (kind == "tree") return Topology::binary_tree(size);
    throw ConfigError(fmt::format("unknown generator '{}'", kind));
  }
  std::filesystem::path p(value);
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  return Topology::from_file(p.string());
}

}  // namespace

std::string_view to_string(ArrivalModel model) {
  return model == ArrivalModel::kPoisson ? "poisson" : "deterministic";
}

std::string_view to_string(Prewarm prewarm) {
  switch (prewarm) {
    case Prewarm::kNone: return "none";
    case Prewarm::kFirstHop: return "first_hop";
    case Prewarm::kAllRouters: return "all_routers";
  }
  return "?";
}

std::string_view to_string(AdversaryBehavior behavior) {
  return behavior == AdversaryBehavior::kForgePint ? "forge_pint" : "replay_crsd";
}

void SimConfig::validate() const {
  topology.validate();
  const auto& t = traffic;
  if (!(t.rate > 0.0)) throw ConfigError("rate must be positive");
  if (t.arrivals == ArrivalModel::kPoisson && t.rate > static_cast<double>(kTicksPerSecond)) {
    throw ConfigError(fmt::format("rate {} exceeds one interest per tick", t.rate));
  }
  if (t.pool == 0) throw ConfigError("pool must be at least 1");
  if (t.duration == 0) throw ConfigError("duration must be positive");
  if (t.interval == 0) throw ConfigError("interval must be positive");
  if (producer.nonce_bits == 0) throw ConfigError("nonce_bits must be positive");
  if (producer.replay_window == 0 || producer.dedup_window == 0) {
    throw ConfigError("replay and dedup windows must be positive");
  }
  if (loss < 0.0 || loss >= 1.0) throw ConfigError("loss must be within [0, 1)");
  if (cache_capacity && *cache_capacity == 0) throw ConfigError("cache_capacity must be positive");
  if (adversary) {
    const auto i = topology.index_of(adversary->router);
    if (topology.nodes[i].role != Role::kRouter) {
      throw ConfigError(fmt::format("adversary node '{}' is not a router", adversary->router));
    }
    if (!(adversary->rate > 0.0) || adversary->rate > static_cast<double>(kTicksPerSecond)) {
      throw ConfigError("adversary_rate must be within (0, 1000]");
    }
  }
}

Scenario parse_scenario(std::istream& in, const std::string& base_dir, const std::string& source) {
  Scenario sc;
  auto& cfg = sc.config;
  auto& t = cfg.traffic;
  std::optional<std::string> topology;
  std::optional<std::uint64_t> repetitions;
  std::optional<std::string> adversary;
  AdversarySpec adv;
  std::set<std::string> seen;

  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("{}:{}: expected key=value", source, number));
    }
    const auto key = lower(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError(fmt::format("{}:{}: duplicate key '{}'", source, number, key));
    }
    try {
      if (key == "topology") topology = value;
      else if (key == "rate") t.rate = to_double(key, value);
      else if (key == "pool") t.pool = static_cast<std::uint32_t>(to_u64(key, value));
      else if (key == "duration") t.duration = to_u64(key, value);
      else if (key == "seed") t.seed = to_u64(key, value);
      else if (key == "seeds") {
        std::string item;
        for (char c : value + ",") {
          if (c != ',') {
            item += c;
            continue;
          }
          if (!trim(item).empty()) sc.seeds.push_back(to_u64(key, trim(item)));
          item.clear();
        }
      } else if (key == "repetitions") repetitions = to_u64(key, value);
      else if (key == "scheme") t.scheme = field(key, [&] { return parse_scheme(value); });
      else if (key == "acct") t.acct = field(key, [&] { return parse_acct_flag(value); });
      else if (key == "collapsing") t.collapsing = to_bool(key, value);
      else if (key == "multicast") t.multicast = to_bool(key, value);
      else if (key == "batching") t.batch_window = to_u64(key, value);
      else if (key == "arrivals") {
        const auto v = lower(value);
        if (v == "poisson") t.arrivals = ArrivalModel::kPoisson;
        else if (v == "deterministic") t.arrivals = ArrivalModel::kDeterministic;
        else throw ConfigError(fmt::format("arrivals: unknown model '{}'", value));
      } else if (key == "interval") t.interval = to_u64(key, value);
      else if (key == "max_requests") t.max_requests = to_u64(key, value);
      else if (key == "blind_nonce") t.blind_nonce = to_bool(key, value);
      else if (key == "omit_crsd") t.omit_crsd = to_bool(key, value);
      else if (key == "payload") cfg.producer.payload_size = to_u64(key, value);
      else if (key == "expiry") cfg.producer.expiry = to_u64(key, value);
      else if (key == "zero_cache_individual") cfg.producer.zero_cache_individual = to_bool(key, value);
      else if (key == "crsd_mode") cfg.producer.crsd_mode = field(key, [&] { return parse_crsd_mode(value); });
      else if (key == "crsd_form") cfg.producer.crsd_form = field(key, [&] { return parse_crsd_form(value); });
      else if (key == "tag_scheme") cfg.producer.tag_scheme = field(key, [&] { return parse_tag_scheme(value); });
      else if (key == "nonce_bits") cfg.producer.nonce_bits = static_cast<unsigned>(to_u64(key, value));
      else if (key == "replay_window") cfg.producer.replay_window = to_u64(key, value);
      else if (key == "dedup_window") cfg.producer.dedup_window = to_u64(key, value);
      else if (key == "log_requests") cfg.producer.log_requests = to_bool(key, value);
      else if (key == "prewarm") {
        const auto v = lower(value);
        if (v == "none") cfg.prewarm = Prewarm::kNone;
        else if (v == "first_hop") cfg.prewarm = Prewarm::kFirstHop;
        else if (v == "all_routers") cfg.prewarm = Prewarm::kAllRouters;
        else throw ConfigError(fmt::format("prewarm: unknown mode '{}'", value));
      } else if (key == "cache_capacity") cfg.cache_capacity = to_u64(key, value);
      else if (key == "loss") cfg.loss = to_double(key, value);
      else if (key == "key_seed") cfg.key_seed = to_u64(key, value);
      else if (key == "output") sc.output_dir = value;
      else if (key == "adversary") adversary = lower(value);
      else if (key == "adversary_router") adv.router = value;
      else if (key == "adversary_rate") adv.rate = to_double(key, value);
      else if (key == "adversary_count") adv.max_count = to_u64(key, value);
      else if (key == "adversary_start") adv.start = to_u64(key, value);
      else throw ConfigError(fmt::format("unknown key '{}'", key));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", source, number, e.what()));
    }
  }

  if (!topology) throw ConfigError(fmt::format("{}: missing 'topology'", source));
  sc.topology_source = *topology;
  cfg.topology = resolve_topology(*topology, base_dir);

  if (adversary && *adversary != "none") {
    if (*adversary == "forge_pint") adv.behavior = AdversaryBehavior::kForgePint;
    else if (*adversary == "replay_crsd") adv.behavior = AdversaryBehavior::kReplayCrsd;
    else throw ConfigError(fmt::format("{}: unknown adversary '{}'", source, *adversary));
    if (adv.router.empty()) throw ConfigError(fmt::format("{}: adversary_router is required", source));
    cfg.adversary = adv;
  }

  if (!sc.seeds.empty() && repetitions) {
    throw ConfigError(fmt::format("{}: give either seeds or repetitions", source));
  }
  if (sc.seeds.empty()) {
    const auto reps = repetitions.value_or(1);
    if (reps == 0) throw ConfigError(fmt::format("{}: repetitions must be at least 1", source));
    for (std::uint64_t i = 0; i < reps; ++i) sc.seeds.push_back(t.seed + i);
  }
  cfg.validate();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open scenario file {}", path));
  const auto base = std::filesystem::path(path).parent_path().string();
  return parse_scenario(in, base, path);
}

}  // namespace ccnacct
