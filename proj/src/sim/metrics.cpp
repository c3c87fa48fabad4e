#include "ccnacct/sim/metrics.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

constexpr std::array<std::string_view, 4> kTypeNames{"interest", "content", "pint", "nack"};

std::string esc(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

class Rows {
 public:
  explicit Rows(std::ostream& out) : out_(out) { out_ << "kind,id,metric,value\n"; }

  template <typename V>
  void add(std::string_view kind, std::string_view id, std::string_view metric, const V& value) {
    out_ << fmt::format("{},{},{},{}\n", kind, esc(id), esc(metric), value);
  }

  void types(std::string_view kind, std::string_view id, std::string_view prefix,
             const TypeCounts& counts) {
    for (std::size_t t = 0; t < counts.size(); ++t) {
      add(kind, id, fmt::format("{}_{}", prefix, kTypeNames[t]), counts[t]);
    }
  }

 private:
  std::ostream& out_;
};

std::string fraction(double v) { return fmt::format("{:.6f}", v); }

}  // namespace

std::uint64_t sum(const TypeCounts& counts) {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

std::uint64_t ProducerMetrics::rejections() const {
  std::uint64_t s = 0;
  for (const auto& [origin, n] : rejections_by_origin) s += n;
  return s;
}

const LinkMetrics& MetricsReport::link(const std::string& a, const std::string& b) const {
  for (const auto& l : links) {
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) return l;
  }
  throw ConfigError(fmt::format("no link {}-{}", a, b));
}

const NodeMetrics& MetricsReport::node(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return n;
  }
  throw ConfigError(fmt::format("unknown node '{}'", id));
}

std::uint64_t MetricsReport::producer_interests() const {
  std::uint64_t s = 0;
  for (const auto& p : producers) s += p.interests;
  return s;
}

std::uint64_t MetricsReport::producer_pint_count() const {
  std::uint64_t s = 0;
  for (const auto& p : producers) s += p.pint_count;
  return s;
}

std::uint64_t MetricsReport::rejections() const {
  std::uint64_t s = 0;
  for (const auto& p : producers) s += p.rejections();
  return s;
}

void MetricsReport::write_csv(std::ostream& out) const {
  Rows rows(out);
  rows.add("run", "-", "seed", seed);
  rows.add("run", "-", "end_tick", end_tick);
  rows.add("run", "-", "events", events);

  std::map<std::size_t, TypeCounts> by_distance;
  for (const auto& n : nodes) {
    rows.add("node", n.id, "role", to_string(n.role));
    rows.add("node", n.id, "distance", n.distance);
    rows.types("node", n.id, "recv", n.received);
    rows.types("node", n.id, "sent", n.sent);
    if (n.role != Role::kRouter) continue;
    const auto& s = n.stats;
    rows.add("node", n.id, "cache_hits", s.cache_hits);
    rows.add("node", n.id, "accountable_cache_hits", s.accountable_cache_hits);
    rows.add("node", n.id, "hit_pints", s.hit_pints);
    rows.add("node", n.id, "collapse_pints", s.collapse_pints);
    rows.add("node", n.id, "batched_pints", s.batched_pints);
    rows.add("node", n.id, "pint_count_emitted", s.pint_count_emitted);
    rows.add("node", n.id, "no_route_drops", s.no_route_drops);
    rows.add("node", n.id, "pint_no_route_drops", s.pint_no_route_drops);
    rows.add("node", n.id, "unsolicited_drops", s.unsolicited_drops);
    rows.add("node", n.id, "missing_crsd_drops", s.missing_crsd_drops);
    auto& d = by_distance[n.distance];
    for (std::size_t t = 0; t < d.size(); ++t) d[t] += n.received[t];
  }
  for (const auto& [distance, counts] : by_distance) {
    rows.types("router_distance", std::to_string(distance), "recv", counts);
  }

  for (const auto& l : links) {
    const auto id = fmt::format("{}-{}", l.a, l.b);
    rows.types("link", id, "fwd", l.forward);
    rows.types("link", id, "bwd", l.backward);
    rows.types("link", id, "bytes", l.bytes);
    rows.add("link", id, "messages", l.messages());
    rows.add("link", id, "lost", l.lost);
  }

  rows.add("consumers", "-", "interests", consumers.interests);
  rows.add("consumers", "-", "key_interests", consumers.key_interests);
  rows.add("consumers", "-", "contents", consumers.contents);
  rows.add("consumers", "-", "keys", consumers.keys);
  rows.add("consumers", "-", "nacks", consumers.nacks);

  for (const auto& p : producers) {
    rows.add("producer", p.id, "interests", p.interests);
    rows.add("producer", p.id, "key_interests", p.key_interests);
    rows.add("producer", p.id, "pints", p.pints);
    rows.add("producer", p.id, "pint_count", p.pint_count);
    rows.add("producer", p.id, "nacks", p.nacks);
    rows.add("producer", p.id, "aggregate_total", p.aggregate_total);
    rows.add("producer", p.id, "aggregate_direct", p.aggregate_direct);
    rows.add("producer", p.id, "distinct_accepted", p.distinct_accepted);
    rows.add("producer", p.id, "distinct_duplicates", p.distinct_duplicates);
    rows.add("producer", p.id, "individual_total", p.individual_total);
    rows.add("producer", p.id, "ignored", p.ignored);
    rows.add("producer", p.id, "rejections", p.rejections());
    for (const auto& [origin, n] : p.rejections_by_origin) rows.add("rejection_origin", p.id, origin, n);
    for (const auto& [reason, n] : p.rejections_by_reason) rows.add("rejection_reason", p.id, reason, n);
  }

  if (adversary) {
    rows.add("adversary", adversary->router, "behavior", to_string(adversary->behavior));
    rows.add("adversary", adversary->router, "injected", adversary->injected);
    rows.add("adversary", adversary->router, "captured", adversary->captured);
  }

  rows.add("summary", "-", "cache_hits", cache_hits);
  rows.add("summary", "-", "conservation_checked", conservation_checked ? 1 : 0);
  rows.add("summary", "-", "conservation_ok", conservation_ok ? 1 : 0);
  rows.add("summary", "-", "upstream_routers", upstream_routers);
  rows.add("summary", "-", "upstream_pint_fraction", fraction(upstream_pint_fraction));
}

void MetricsReport::write_ledger_csv(std::ostream& out) const {
  out << "producer,name,type,consumer,count,duplicates,rejections\n";
  for (const auto& p : producers) {
    for (const auto& row : p.ledger) {
      out << fmt::format("{},{},{},{},{},{},{}\n", esc(p.id), esc(row.name.to_uri()),
                         to_string(row.type), esc(row.consumer), row.count, row.duplicates,
                         row.rejections);
    }
  }
}

std::string MetricsReport::csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

void write_summary_csv(std::ostream& out, const std::vector<MetricsReport>& reports) {
  out << "seed,interests,producer_interests,pint_count,cache_hits,upstream_pint_fraction,"
         "rejections,conservation_ok\n";
  double fraction_sum = 0.0;
  double sums[5] = {0, 0, 0, 0, 0};
  std::size_t ok = 0;
  for (const auto& r : reports) {
    out << fmt::format("{},{},{},{},{},{},{},{}\n", r.seed, r.consumers.interests,
                       r.producer_interests(), r.producer_pint_count(), r.cache_hits,
                       fraction(r.upstream_pint_fraction), r.rejections(), r.conservation_ok ? 1 : 0);
    sums[0] += static_cast<double>(r.consumers.interests);
    sums[1] += static_cast<double>(r.producer_interests());
    sums[2] += static_cast<double>(r.producer_pint_count());
    sums[3] += static_cast<double>(r.cache_hits);
    sums[4] += static_cast<double>(r.rejections());
    fraction_sum += r.upstream_pint_fraction;
    ok += r.conservation_ok ? 1 : 0;
  }
  if (reports.empty()) return;
  const double n = static_cast<double>(reports.size());
  out << fmt::format("mean,{:.3f},{:.3f},{:.3f},{:.3f},{},{:.3f},{}\n", sums[0] / n, sums[1] / n,
                     sums[2] / n, sums[3] / n, fraction(fraction_sum / n), sums[4] / n,
                     ok == reports.size() ? 1 : 0);
}

}  // namespace ccnacct
