#include "ccnacct/sim/simulator.hpp"

#include <memory>
#include <queue>
#include <random>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "ccnacct/core/codec.hpp"
#include "ccnacct/core/errors.hpp"
#include "ccnacct/crsd/anonymous.hpp"
#include "ccnacct/crsd/payload.hpp"

namespace ccnacct {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::size_t type_index(const Message& msg) { return static_cast<std::size_t>(type_of(msg)) - 1; }

struct Event {
  enum class Kind : std::uint8_t { kDeliver, kArrival, kFlush, kAdversary };

  Tick at;
  std::uint64_t seq;
  Kind kind;
  std::size_t node;
  std::size_t from;
  std::shared_ptr<const Message> msg;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.at, a.seq) > std::tie(b.at, b.seq);
  }
};

struct ConsumerState {
  std::size_t node;
  std::size_t uplink;
  Rng rng;
  std::uint64_t issued = 0;
  std::uint64_t key_seq = 0;
};

struct AdversaryState {
  AdversarySpec spec;
  std::size_t node;
  Tick period;
  Rng rng;
  AdversaryMetrics metrics;
  std::map<Name, std::vector<Bytes>> pending;   // payloads seen, content not yet returned
  std::vector<std::pair<Name, Bytes>> replayable;
};

class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg);
  MetricsReport run();

 private:
  void schedule(Tick at, Event::Kind kind, std::size_t node, std::size_t from = 0,
                std::shared_ptr<const Message> msg = nullptr);
  void send(std::size_t from, std::size_t to, Message msg);
  void send_all(std::size_t from, std::vector<Outgoing> out);
  std::size_t link_between(std::size_t a, std::size_t b) const;

  void deliver(const Event& ev);
  void at_router(std::size_t node, std::size_t from, const Message& msg);
  void at_producer(std::size_t node, std::size_t from, const Message& msg);
  void at_consumer(std::size_t node, const Message& msg);
  void arrival(std::size_t slot);
  void adversary_step();
  void schedule_flush(std::size_t node);

  Name pick_name(Rng& rng) const;
  Tick next_gap(Rng& rng) const;
  Bytes request_payload(ConsumerState& c, const Name& name);
  Bytes forged_blob(const Name& name);
  Producer& producer_for(std::size_t node, const Name& name);
  void prewarm();
  MetricsReport collect() const;

  const SimConfig& cfg_;
  AcctFlag acct_;
  Routes routes_;
  std::vector<std::vector<Adjacent>> adj_;
  std::vector<std::unique_ptr<Node>> routers_;
  std::vector<std::unique_ptr<Producer>> producers_;
  std::vector<std::size_t> producer_slot_;
  std::vector<std::size_t> consumer_slot_;
  std::vector<ConsumerState> consumers_;
  std::vector<Name> prefixes_;
  std::shared_ptr<const KeyRegistry> keys_;

  std::vector<NodeMetrics> node_metrics_;
  std::vector<LinkMetrics> link_metrics_;
  std::vector<ProducerMetrics> producer_metrics_;
  ConsumerTotals totals_;
  std::optional<AdversaryState> adversary_;

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::set<std::pair<std::size_t, Tick>> flushes_;
  std::uint64_t seq_ = 0;
  std::uint64_t events_ = 0;
  Tick now_ = 0;
  Rng loss_rng_;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

Simulation::Simulation(const SimConfig& cfg)
    : cfg_(cfg),
      acct_(cfg.traffic.scheme == Scheme::kEncryption ? AcctFlag::kNone : cfg.traffic.acct),
      routes_(build_fibs(cfg.topology)),
      adj_(cfg.topology.adjacency()),
      loss_rng_(splitmix64(cfg.traffic.seed ^ 0x105500ull)) {
  const auto& topo = cfg.topology;
  const std::size_t n = topo.nodes.size();
  routers_.resize(n);
  producer_slot_.assign(n, kNone);
  consumer_slot_.assign(n, kNone);

  std::vector<Bytes> consumer_ids;
  for (const auto& node : topo.nodes) {
    if (node.role == Role::kConsumer) consumer_ids.push_back(node.id);
  }
  for (const auto& [node, prefix] : topo.prefixes) prefixes_.push_back(prefix);
  keys_ = std::make_shared<const KeyRegistry>(
      KeyRegistry::generate(consumer_ids, prefixes_, cfg.key_seed));

  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = topo.nodes[i];
    node_metrics_.push_back({node.id, node.role, routes_.distance[i], {}, {}, {}});
    switch (node.role) {
      case Role::kRouter: {
        NodeConfig nc;
        nc.id = node.id;
        nc.multicast = cfg.traffic.multicast;
        nc.collapsing = cfg.traffic.collapsing;
        nc.caching = cfg.traffic.scheme != Scheme::kCacheless;
        nc.cache_capacity = cfg.cache_capacity;
        nc.batch_window = cfg.traffic.batch_window;
        routers_[i] = std::make_unique<Node>(nc);
        for (const auto& [prefix, hops] : routes_.fib[i]) routers_[i]->fib().add(prefix, hops);
        break;
      }
      case Role::kConsumer: {
        consumer_slot_[i] = consumers_.size();
        const auto seed = splitmix64(cfg.traffic.seed * 0x100000001B3ull + consumers_.size());
        consumers_.push_back({i, adj_[i].front().node, Rng(seed)});
        break;
      }
      case Role::kProducer:
        break;
    }
  }

  for (const auto& [node, prefix] : topo.prefixes) {
    if (producer_slot_[node] != kNone) {
      throw ConfigError(fmt::format("producer '{}' serves more than one prefix", topo.nodes[node].id));
    }
    ProducerConfig pc = cfg.producer;
    pc.prefix = prefix;
    pc.keys = keys_;
    pc.default_acct = acct_;
    producer_slot_[node] = producers_.size();
    producers_.push_back(std::make_unique<Producer>(std::move(pc)));
    producer_metrics_.push_back({});
    producer_metrics_.back().id = topo.nodes[node].id;
  }

  for (const auto& l : topo.links) link_metrics_.push_back({topo.nodes[l.a].id, topo.nodes[l.b].id});

  if (cfg.adversary) {
    const auto node = topo.index_of(cfg.adversary->router);
    const auto period = std::max<Tick>(
        1, static_cast<Tick>(static_cast<double>(kTicksPerSecond) / cfg.adversary->rate));
    adversary_ = AdversaryState{*cfg.adversary, node, period,
                                Rng(splitmix64(cfg.traffic.seed ^ 0xADull)), {}, {}, {}};
    adversary_->metrics.router = cfg.adversary->router;
    adversary_->metrics.behavior = cfg.adversary->behavior;
  }
}

void Simulation::schedule(Tick at, Event::Kind kind, std::size_t node, std::size_t from,
                          std::shared_ptr<const Message> msg) {
  queue_.push(Event{at, seq_++, kind, node, from, std::move(msg)});
}

std::size_t Simulation::link_between(std::size_t a, std::size_t b) const {
  for (const auto& nb : adj_[a]) {
    if (nb.node == b) return nb.link;
  }
  throw Error(fmt::format("no link between {} and {}", a, b));
}

void Simulation::send(std::size_t from, std::size_t to, Message msg) {
  const auto link = link_between(from, to);
  auto& lm = link_metrics_[link];
  if (cfg_.loss > 0.0 && std::bernoulli_distribution(cfg_.loss)(loss_rng_)) {
    ++lm.lost;
    return;
  }
  const auto t = type_index(msg);
  const bool forward = cfg_.topology.links[link].a == from;
  ++(forward ? lm.forward : lm.backward)[t];
  lm.bytes[t] += encoded_size(msg);
  ++node_metrics_[from].sent[t];
  schedule(now_ + cfg_.topology.links[link].delay, Event::Kind::kDeliver, to, from,
           std::make_shared<const Message>(std::move(msg)));
}

void Simulation::send_all(std::size_t from, std::vector<Outgoing> out) {
  for (auto& o : out) send(from, o.face, std::move(o.message));
}

void Simulation::schedule_flush(std::size_t node) {
  const auto deadline = routers_[node]->next_batch_deadline();
  if (deadline && flushes_.emplace(node, *deadline).second) {
    schedule(*deadline, Event::Kind::kFlush, node);
  }
}

Name Simulation::pick_name(Rng& rng) const {
  const auto& prefix =
      prefixes_.size() == 1
          ? prefixes_.front()
          : prefixes_[std::uniform_int_distribution<std::size_t>(0, prefixes_.size() - 1)(rng)];
  const auto i = std::uniform_int_distribution<std::uint32_t>(0, cfg_.traffic.pool - 1)(rng);
  return prefix.append(std::to_string(i));
}

Tick Simulation::next_gap(Rng& rng) const {
  const auto& t = cfg_.traffic;
  if (t.arrivals == ArrivalModel::kDeterministic) return t.interval;
  const double p = t.rate / static_cast<double>(kTicksPerSecond);
  if (p >= 1.0) return 1;
  return 1 + std::geometric_distribution<Tick>(p)(rng);
}

Bytes Simulation::request_payload(ConsumerState& c, const Name& name) {
  switch (acct_) {
    case AcctFlag::kNone:
      if (cfg_.traffic.scheme == Scheme::kEncryption || !cfg_.traffic.blind_nonce) return {};
      [[fallthrough]];
    case AcctFlag::kAggregate:
      if (!cfg_.traffic.blind_nonce) return {};
      [[fallthrough]];
    case AcctFlag::kDistinct:
      return encode_distinct_token({random_nonce(c.rng, cfg_.producer.nonce_bits), now_});
    case AcctFlag::kIndividual: {
      if (cfg_.traffic.omit_crsd) return {};
      const Bytes& id = cfg_.topology.nodes[c.node].id;
      const auto s = make_sec_crsd(Crsd(cfg_.producer.crsd_form == CrsdForm::kNonceOnly
                                            ? CrsdForm::kPseudonym
                                            : cfg_.producer.crsd_form,
                                        id),
                                   name, keys_->tag_key(id, name, cfg_.producer.tag_scheme), now_,
                                   c.rng, cfg_.producer.nonce_bits);
      switch (cfg_.producer.crsd_mode) {
        case CrsdMode::kPlain: return wrap_payload(PayloadKind::kSecCrsd, encode_sec_crsd(s));
        case CrsdMode::kAnonymous:
          return wrap_payload(PayloadKind::kAnonymous,
                              make_a_crsd(s, keys_->producer_keys(name).public_key, c.rng));
        case CrsdMode::kAnonymousSymmetric: {
          const auto& tag = keys_->symmetric_tag_for(id, name);
          return wrap_payload(PayloadKind::kAnonymousSymmetric,
                              make_a_crsd_symmetric(s, tag, keys_->symmetric_by_tag(tag).key, c.rng));
        }
      }
    }
  }
  return {};
}

Bytes Simulation::forged_blob(const Name& name) {
  auto& adv = *adversary_;
  // claim to be a random consumer; the tag is random bytes of the right size
  std::vector<const Bytes*> ids;
  for (const auto& c : consumers_) ids.push_back(&cfg_.topology.nodes[c.node].id);
  const Bytes& victim = *ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(adv.rng)];
  const std::size_t tag_len = cfg_.producer.tag_scheme == TagScheme::kHmacSha256 ? 32 : 64;
  const SecCrsd s{Crsd(CrsdForm::kPseudonym, victim), random_nonce(adv.rng, cfg_.producer.nonce_bits),
                  now_, draw_bytes(adv.rng, tag_len)};
  switch (cfg_.producer.crsd_mode) {
    case CrsdMode::kPlain: return wrap_payload(PayloadKind::kSecCrsd, encode_sec_crsd(s));
    case CrsdMode::kAnonymous:
      return wrap_payload(PayloadKind::kAnonymous,
                          make_a_crsd(s, keys_->producer_keys(name).public_key, adv.rng));
    case CrsdMode::kAnonymousSymmetric:
      // key tags are visible on the wire, the keys are not
      return wrap_payload(PayloadKind::kAnonymousSymmetric,
                          make_a_crsd_symmetric(s, keys_->symmetric_tag_for(victim, name),
                                                draw_bytes(adv.rng, 32), adv.rng));
  }
  return {};
}

Producer& Simulation::producer_for(std::size_t node, const Name&) {
  return *producers_[producer_slot_[node]];
}

void Simulation::prewarm() {
  if (cfg_.prewarm == Prewarm::kNone) return;
  for (std::size_t i = 0; i < routers_.size(); ++i) {
    if (!routers_[i]) continue;
    if (cfg_.prewarm == Prewarm::kFirstHop) {
      const bool first_hop = std::any_of(adj_[i].begin(), adj_[i].end(), [&](const Adjacent& a) {
        return cfg_.topology.nodes[a.node].role == Role::kConsumer;
      });
      if (!first_hop) continue;
    }
    for (const auto& [node, prefix] : cfg_.topology.prefixes) {
      const auto& producer = *producers_[producer_slot_[node]];
      for (std::uint32_t k = 0; k < cfg_.traffic.pool; ++k) {
        routers_[i]->preload(producer.content_for(prefix.append(std::to_string(k))));
      }
    }
  }
}

void Simulation::arrival(std::size_t slot) {
  auto& c = consumers_[slot];
  if (now_ >= cfg_.traffic.duration) return;
  if (cfg_.traffic.max_requests != 0 && c.issued >= cfg_.traffic.max_requests) return;
  const Name name = pick_name(c.rng);
  Bytes payload = request_payload(c, name);
  ++c.issued;
  ++totals_.interests;
  send(c.node, c.uplink, Interest(name, std::move(payload)));
  schedule(now_ + next_gap(c.rng), Event::Kind::kArrival, c.node);
}

void Simulation::at_consumer(std::size_t node, const Message& msg) {
  auto& c = consumers_[consumer_slot_[node]];
  if (const auto* co = std::get_if<ContentObject>(&msg)) {
    if (key_target(co->name())) {
      ++totals_.keys;
      return;
    }
    ++totals_.contents;
    if (cfg_.traffic.scheme == Scheme::kEncryption) {
      const std::uint64_t seq = (static_cast<std::uint64_t>(consumer_slot_[node]) << 40) | c.key_seq++;
      ++totals_.key_interests;
      send(node, c.uplink, Interest(key_name_for(co->name(), seq)));
    }
  } else if (std::holds_alternative<Nack>(msg)) {
    ++totals_.nacks;
  }
}

void Simulation::at_producer(std::size_t node, std::size_t from, const Message& msg) {
  auto& pm = producer_metrics_[producer_slot_[node]];
  if (const auto* interest = std::get_if<Interest>(&msg)) {
    auto& producer = producer_for(node, interest->name());
    if (!producer.serves(interest->name())) return;
    ++(key_target(interest->name()) ? pm.key_interests : pm.interests);
    auto reply = producer.ingest_interest(*interest, now_);
    if (std::holds_alternative<Nack>(reply)) {
      ++pm.nacks;
      send(node, from, std::get<Nack>(std::move(reply)));
    } else {
      send(node, from, std::get<ContentObject>(std::move(reply)));
    }
  } else if (const auto* pint = std::get_if<PInt>(&msg)) {
    ++pm.pints;
    pm.pint_count += pint->count();
    producer_for(node, pint->name()).ingest_pint(*pint, now_);
  }
}

void Simulation::at_router(std::size_t node, std::size_t from, const Message& msg) {
  Node& r = *routers_[node];
  r.set_clock(now_);
  const auto face = static_cast<FaceId>(from);
  const bool watching = adversary_ && adversary_->node == node &&
                        adversary_->spec.behavior == AdversaryBehavior::kReplayCrsd;
  std::vector<Outgoing> out;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Interest>) {
          if (watching && m.has_payload()) {
            ++adversary_->metrics.captured;
            adversary_->pending[m.name()].push_back(m.payload());
          }
          out = r.on_interest(m, face);
        } else if constexpr (std::is_same_v<T, ContentObject>) {
          if (watching) {
            // the originals have now been accounted upstream
            if (auto it = adversary_->pending.find(m.name()); it != adversary_->pending.end()) {
              for (auto& p : it->second) adversary_->replayable.emplace_back(m.name(), std::move(p));
              adversary_->pending.erase(it);
            }
          }
          out = r.on_content(m, face);
        } else if constexpr (std::is_same_v<T, PInt>) {
          out = r.on_pint(m, face);
        } else {
          out = r.on_nack(m, face);
        }
      },
      msg);
  send_all(node, std::move(out));
  schedule_flush(node);
}

void Simulation::adversary_step() {
  auto& adv = *adversary_;
  if (now_ >= cfg_.traffic.duration || adv.metrics.injected >= adv.spec.max_count) return;
  Node& r = *routers_[adv.node];
  r.set_clock(now_);
  const Bytes& origin = cfg_.topology.nodes[adv.node].id;
  std::optional<PInt> pint;
  if (adv.spec.behavior == AdversaryBehavior::kForgePint) {
    const Name name = pick_name(adv.rng);
    if (acct_ == AcctFlag::kIndividual || acct_ == AcctFlag::kDistinct) {
      Bytes blob = acct_ == AcctFlag::kIndividual
                       ? forged_blob(name)
                       : encode_distinct_token({random_nonce(adv.rng, cfg_.producer.nonce_bits), now_});
      pint.emplace(name, acct_, origin, 1, std::vector<Bytes>{std::move(blob)});
    } else {
      pint.emplace(name, acct_ == AcctFlag::kNone ? AcctFlag::kAggregate : acct_, origin, 1);
    }
  } else if (!adv.replayable.empty()) {
    const auto& [name, blob] = adv.replayable.back();
    const AcctFlag type = acct_ == AcctFlag::kNone ? AcctFlag::kAggregate : acct_;
    pint.emplace(name, type, origin, 1,
                 type == AcctFlag::kAggregate ? std::vector<Bytes>{} : std::vector<Bytes>{blob});
  }
  if (pint) {
    ++adv.metrics.injected;
    send_all(adv.node, r.on_pint(*pint, static_cast<FaceId>(adv.node)));
  }
  schedule(now_ + adv.period, Event::Kind::kAdversary, adv.node);
}

void Simulation::deliver(const Event& ev) {
  const Message& msg = *ev.msg;
  ++node_metrics_[ev.node].received[type_index(msg)];
  switch (cfg_.topology.nodes[ev.node].role) {
    case Role::kRouter: at_router(ev.node, ev.from, msg); break;
    case Role::kProducer: at_producer(ev.node, ev.from, msg); break;
    case Role::kConsumer: at_consumer(ev.node, msg); break;
  }
}

MetricsReport Simulation::run() {
  prewarm();
  for (auto& c : consumers_) schedule(next_gap(c.rng), Event::Kind::kArrival, c.node);
  if (adversary_) schedule(std::max<Tick>(1, adversary_->spec.start), Event::Kind::kAdversary, adversary_->node);

  while (!queue_.empty()) {
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.at;
    ++events_;
    switch (ev.kind) {
      case Event::Kind::kDeliver: deliver(ev); break;
      case Event::Kind::kArrival: arrival(consumer_slot_[ev.node]); break;
      case Event::Kind::kAdversary: adversary_step(); break;
      case Event::Kind::kFlush: {
        flushes_.erase({ev.node, ev.at});
        Node& r = *routers_[ev.node];
        r.set_clock(now_);
        send_all(ev.node, r.flush_batches());
        schedule_flush(ev.node);
        break;
      }
    }
  }
  return collect();
}

MetricsReport Simulation::collect() const {
  MetricsReport rep;
  rep.seed = cfg_.traffic.seed;
  rep.end_tick = now_;
  rep.events = events_;
  rep.nodes = node_metrics_;
  for (std::size_t i = 0; i < routers_.size(); ++i) {
    if (routers_[i]) {
      rep.nodes[i].stats = routers_[i]->stats();
      rep.cache_hits += routers_[i]->stats().cache_hits;
    }
  }
  rep.links = link_metrics_;
  rep.consumers = totals_;
  rep.producers = producer_metrics_;
  for (std::size_t slot = 0; slot < producers_.size(); ++slot) {
    const auto& ledger = producers_[slot]->ledger();
    auto& pm = rep.producers[slot];
    for (const auto& [name, c] : ledger.aggregate) {
      pm.aggregate_total += c.total;
      pm.aggregate_direct += c.direct;
    }
    for (const auto& [name, c] : ledger.distinct) {
      pm.distinct_accepted += c.accepted;
      pm.distinct_duplicates += c.duplicates;
    }
    for (const auto& [key, n] : ledger.individual) pm.individual_total += n;
    pm.ignored = ledger.ignored;
    for (const auto& [origin, n] : ledger.rejections_by_origin) {
      pm.rejections_by_origin[origin.empty() ? "-" : origin] += n;
    }
    for (const auto& r : ledger.rejections) ++pm.rejections_by_reason[std::string(to_string(r.reason))];
    for (auto kind : {AcctFlag::kAggregate, AcctFlag::kDistinct, AcctFlag::kIndividual}) {
      auto rows = producers_[slot]->query(kind);
      pm.ledger.insert(pm.ledger.end(), rows.begin(), rows.end());
    }
  }
  if (adversary_) rep.adversary = adversary_->metrics;

  // conservation
  const std::uint64_t injected = adversary_ ? adversary_->metrics.injected : 0;
  rep.conservation_checked = !cfg_.traffic.multicast && cfg_.loss == 0.0 &&
                             (acct_ != AcctFlag::kNone || cfg_.traffic.scheme == Scheme::kEncryption);
  if (cfg_.traffic.scheme == Scheme::kEncryption) {
    std::uint64_t keys = 0;
    for (const auto& pm : rep.producers) keys += pm.key_interests;
    rep.conservation_ok = keys == totals_.interests;
  } else {
    rep.conservation_ok =
        rep.producer_interests() + rep.producer_pint_count() - injected == totals_.interests;
  }

  // routers strictly upstream of any router that served a cache hit
  std::set<std::size_t> upstream;
  for (std::size_t i = 0; i < routers_.size(); ++i) {
    if (!routers_[i] || routers_[i]->stats().cache_hits == 0) continue;
    std::size_t v = i;
    while (!routes_.fib[v].empty()) {
      v = routes_.fib[v].front().second.front();
      if (!routers_[v]) break;
      upstream.insert(v);
    }
  }
  std::uint64_t pints = 0, total = 0;
  for (auto v : upstream) {
    pints += node_metrics_[v].received[static_cast<std::size_t>(MessageType::kPInt) - 1];
    total += sum(node_metrics_[v].received);
  }
  rep.upstream_routers = upstream.size();
  rep.upstream_pint_fraction = total == 0 ? 0.0 : static_cast<double>(pints) / static_cast<double>(total);
  return rep;
}

}  // namespace

MetricsReport run(const SimConfig& config) {
  config.validate();
  Simulation sim(config);
  return sim.run();
}

std::vector<MetricsReport> run_sweep_serial(const SimConfig& config,
                                            const std::vector<std::uint64_t>& seeds) {
  std::vector<MetricsReport> out;
  for (auto seed : seeds) {
    SimConfig c = config;
    c.traffic.seed = seed;
    out.push_back(run(c));
  }
  return out;
}

std::vector<MetricsReport> run_sweep(const SimConfig& config, const std::vector<std::uint64_t>& seeds) {
  config.validate();
  ensure_sodium();
  std::vector<MetricsReport> out(seeds.size());
  std::vector<std::string> errors(seeds.size());
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      SimConfig c = config;
      c.traffic.seed = seeds[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = run(c);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw ConfigError(e);
  }
  return out;
}

}  // namespace ccnacct
