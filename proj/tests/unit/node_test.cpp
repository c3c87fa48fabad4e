#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ccnacct/core/errors.hpp"
#include "ccnacct/node/node.hpp"
#include "generators.hpp"

namespace ccnacct {
namespace {

ContentObject make_co(const char* uri, AcctFlag acct, Tick expiry = 100) {
  return ContentObject(Name::parse(uri), "data", acct, expiry);
}

Node make_router(bool multicast = false) {
  NodeConfig cfg;
  cfg.id = "R1";
  cfg.multicast = multicast;
  Node node(cfg);
  node.fib().add(Name{}, {9});
  return node;
}

std::size_t count_pints(const std::vector<Outgoing>& out) {
  return static_cast<std::size_t>(std::count_if(out.begin(), out.end(), [](const Outgoing& o) {
    return type_of(o.message) == MessageType::kPInt;
  }));
}

TEST(Node, CacheHitServesContentAndReportsUpstream) {
  Node r = make_router();
  r.preload(make_co("/a", AcctFlag::kAggregate));
  const auto out = r.on_interest(Interest(Name::parse("/a")), 0);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].face, 0u);
  EXPECT_EQ(type_of(out[0].message), MessageType::kContent);
  EXPECT_EQ(out[1].face, 9u);
  const auto& pint = std::get<PInt>(out[1].message);
  EXPECT_EQ(pint.name(), Name::parse("/a"));
  EXPECT_EQ(pint.count(), 1u);
  EXPECT_EQ(pint.type(), AcctFlag::kAggregate);
  EXPECT_EQ(pint.origin(), "R1");
  EXPECT_TRUE(pint.cdata().empty());
  EXPECT_TRUE(r.pit().empty());
}

TEST(Node, CacheHitOnUnaccountableContentSendsNoPInt) {
  Node r = make_router();
  r.preload(make_co("/a", AcctFlag::kNone));
  const auto out = r.on_interest(Interest(Name::parse("/a")), 0);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(r.stats().cache_hits, 1u);
  EXPECT_EQ(r.stats().accountable_cache_hits, 0u);
}

TEST(Node, PitHitCollapses) {
  Node r = make_router();
  ASSERT_EQ(r.on_interest(Interest(Name::parse("/a")), 1).size(), 1u);
  EXPECT_TRUE(r.on_interest(Interest(Name::parse("/a")), 3).empty());
  const auto& entry = r.pit().at(Name::parse("/a"));
  ASSERT_EQ(entry.arrivals.size(), 2u);
  EXPECT_EQ(entry.arrivals[1].face, 3u);
  EXPECT_FALSE(entry.arrivals[1].forwarded);
  EXPECT_EQ(entry.forwarded_count(), 1u);
}

TEST(Node, PlainForwardOnMiss) {
  Node r = make_router();
  const auto out = r.on_interest(Interest(Name::parse("/a")), 2);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].face, 9u);
  EXPECT_EQ(std::get<Interest>(out[0].message).name(), Name::parse("/a"));
}

TEST(Node, NoRouteDropsInterest) {
  NodeConfig cfg;
  cfg.id = "R";
  Node r(cfg);
  EXPECT_TRUE(r.on_interest(Interest(Name::parse("/a")), 0).empty());
  EXPECT_EQ(r.stats().no_route_drops, 1u);
  EXPECT_TRUE(r.pit().empty());
}

TEST(Node, MulticastForwardsToEveryNextHop) {
  NodeConfig cfg;
  cfg.id = "R";
  cfg.multicast = true;
  Node r(cfg);
  r.fib().add(Name::parse("/a"), {4, 5});
  const auto out = r.on_interest(Interest(Name::parse("/a/x")), 1);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].face, 4u);
  EXPECT_EQ(out[1].face, 5u);
}

TEST(Node, CollapsedArrivalsReportedOnContentReturn) {
  Node r = make_router();
  r.on_interest(Interest(Name::parse("/a"), "p2"), 2);
  r.on_interest(Interest(Name::parse("/a"), "p3"), 3);
  r.on_interest(Interest(Name::parse("/a"), "p5"), 5);
  r.on_interest(Interest(Name::parse("/a"), "p6"), 6);
  const auto out = r.on_content(make_co("/a", AcctFlag::kDistinct), 9);
  ASSERT_EQ(out.size(), 5u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(type_of(out[i].message), MessageType::kContent);
  EXPECT_EQ(out[0].face, 2u);
  EXPECT_EQ(out[1].face, 3u);
  EXPECT_EQ(out[2].face, 5u);
  EXPECT_EQ(out[3].face, 6u);
  const auto& pint = std::get<PInt>(out[4].message);
  EXPECT_EQ(out[4].face, 9u);
  EXPECT_EQ(pint.count(), 3u);
  EXPECT_EQ(pint.cdata(), (std::vector<Bytes>{"p3", "p5", "p6"}));
  EXPECT_TRUE(r.pit().empty());
  EXPECT_TRUE(r.cs().contains(Name::parse("/a")));
}

TEST(Node, SingleArrivalProducesNoPInt) {
  Node r = make_router();
  r.on_interest(Interest(Name::parse("/a")), 2);
  const auto out = r.on_content(make_co("/a", AcctFlag::kAggregate), 9);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].face, 2u);
}

TEST(Node, UnsolicitedContentDropped) {
  Node r = make_router();
  EXPECT_TRUE(r.on_content(make_co("/a", AcctFlag::kAggregate), 9).empty());
  EXPECT_EQ(r.stats().unsolicited_drops, 1u);
  EXPECT_FALSE(r.cs().contains(Name::parse("/a")));
}

TEST(Node, NackReleasesPendingFaces) {
  Node r = make_router();
  const Name a = Name::parse("/a");
  r.on_interest(Interest(a), 1);
  r.on_interest(Interest(a), 2);
  const auto out = r.on_nack(Nack(a, NackReason::kMissingCrsd, "req"), 9);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].face, 1u);
  EXPECT_EQ(out[1].face, 2u);
  EXPECT_TRUE(r.pit().empty());
  EXPECT_TRUE(r.on_nack(Nack(a, NackReason::kBadCrsd, ""), 9).empty());
  EXPECT_EQ(r.stats().unsolicited_drops, 1u);
}

TEST(Node, ZeroExpiryContentIsNeverCached) {
  Node r = make_router();
  r.on_interest(Interest(Name::parse("/a")), 2);
  r.on_content(make_co("/a", AcctFlag::kIndividual, 0), 9);
  EXPECT_EQ(r.cs().size(), 0u);
}

TEST(Node, RepeatFaceArrivalIsAccountedButServedOnce) {
  Node r = make_router();
  r.on_interest(Interest(Name::parse("/a")), 2);
  r.on_interest(Interest(Name::parse("/a")), 2);
  const auto out = r.on_content(make_co("/a", AcctFlag::kAggregate), 9);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].face, 2u);
  EXPECT_EQ(std::get<PInt>(out[1].message).count(), 1u);
}

TEST(Node, CollapsingDisabledForwardsEveryInterest) {
  NodeConfig cfg;
  cfg.id = "R";
  cfg.collapsing = false;
  Node r(cfg);
  r.fib().add(Name{}, {9});
  EXPECT_EQ(r.on_interest(Interest(Name::parse("/a")), 1).size(), 1u);
  EXPECT_EQ(r.on_interest(Interest(Name::parse("/a")), 2).size(), 1u);
  const auto out = r.on_content(make_co("/a", AcctFlag::kAggregate), 9);
  EXPECT_EQ(out.size(), 2u);
  EXPECT_EQ(count_pints(out), 0u);
}

TEST(GeneratePInt, CacheHitCopiesPayload) {
  const auto co = make_co("/a", AcctFlag::kIndividual);
  const Interest i(Name::parse("/a"), "abc");
  const PInt p = generate_pint(co, &i, nullptr, "R", true);
  EXPECT_EQ(p.count(), 1u);
  EXPECT_EQ(p.cdata(), std::vector<Bytes>{"abc"});
  EXPECT_EQ(p.type(), AcctFlag::kIndividual);
}

TEST(GeneratePInt, CollapsedPayloadsInArrivalOrder) {
  const auto co = make_co("/a", AcctFlag::kDistinct);
  PitEntry e{Name::parse("/a"), {{1, "w", true}, {2, "x", false}, {3, "y", false}, {4, "z", false}}};
  const PInt p = generate_pint(co, nullptr, &e, "R", false);
  EXPECT_EQ(p.count(), 3u);
  EXPECT_EQ(p.cdata(), (std::vector<Bytes>{"x", "y", "z"}));
}

TEST(GeneratePInt, AggregateCountsCollapsedWithoutCdata) {
  // Hand-simulated PIT: first arrival forwarded, four later ones collapsed.
  Node r = make_router();
  for (FaceId f : {1u, 2u, 3u, 4u, 5u}) r.on_interest(Interest(Name::parse("/a"), "n"), f);
  const PitEntry& e = r.pit().at(Name::parse("/a"));
  ASSERT_EQ(e.collapsed_count(), 4u);
  const PInt p = generate_pint(make_co("/a", AcctFlag::kAggregate), nullptr, &e, "R", false);
  EXPECT_EQ(p.count(), 4u);
  EXPECT_TRUE(p.cdata().empty());
}

TEST(GeneratePInt, MissingCrsdPolicies) {
  const auto co = make_co("/a", AcctFlag::kDistinct);
  const Interest bare(Name::parse("/a"));
  EXPECT_EQ(generate_pint(co, &bare, nullptr, "R", true).cdata(), std::vector<Bytes>{""});
  EXPECT_THROW(generate_pint(co, &bare, nullptr, "R", true, MissingCrsdPolicy::kReject),
               MissingCrsd);
  // AGGREGATE drops CrSD, so nothing is missing.
  EXPECT_NO_THROW(generate_pint(make_co("/a", AcctFlag::kAggregate), &bare, nullptr, "R", true,
                                MissingCrsdPolicy::kReject));
}

TEST(Node, PIntForwardedToFirstHopOnly) {
  NodeConfig cfg;
  cfg.id = "R";
  cfg.multicast = true;
  Node r(cfg);
  r.fib().add(Name::parse("/a"), {1, 2});
  const auto out = r.on_pint(PInt(Name::parse("/a/x"), AcctFlag::kAggregate, "o", 1), 7);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].face, 1u);
}

TEST(Node, PIntWithoutRouteIsDropped) {
  NodeConfig cfg;
  cfg.id = "R";
  Node r(cfg);
  EXPECT_TRUE(r.on_pint(PInt(Name::parse("/a"), AcctFlag::kAggregate, "o", 1), 7).empty());
  EXPECT_EQ(r.stats().pint_no_route_drops, 1u);
}

TEST(ContentStore, ExpiryBoundaryIsInclusive) {
  ContentStore cs;
  cs.insert(make_co("/a", AcctFlag::kNone, 10), 0);
  EXPECT_EQ(cs.evict_expired(9), 0u);
  EXPECT_TRUE(cs.contains(Name::parse("/a")));
  EXPECT_EQ(cs.evict_expired(10), 1u);
  EXPECT_FALSE(cs.contains(Name::parse("/a")));
}

TEST(ContentStore, ExpiredEntryIsAMiss) {
  ContentStore cs;
  cs.insert(make_co("/a", AcctFlag::kNone, 5), 0);
  EXPECT_NE(cs.find(Name::parse("/a"), 4), nullptr);
  EXPECT_EQ(cs.find(Name::parse("/a"), 5), nullptr);
}

TEST(ContentStore, EvictionMatchesFilterOracle) {
  std::mt19937_64 rng(5);
  ContentStore cs;
  std::vector<CsEntry> shadow;
  for (int i = 0; i < 100; ++i) {
    const Tick at = std::uniform_int_distribution<Tick>(0, 50)(rng);
    const Tick expiry = std::uniform_int_distribution<Tick>(1, 60)(rng);
    ContentObject co(Name::parse("/n" + std::to_string(i)), "", AcctFlag::kNone, expiry);
    cs.insert(co, at);
    shadow.push_back({co, at, at + expiry});
  }
  const Tick clock = 60;
  std::set<Name> expected;
  for (const auto& e : shadow) {
    if (e.expires_at > clock) expected.insert(e.content.name());
  }
  const std::size_t evicted = cs.evict_expired(clock);
  std::set<Name> survivors;
  for (const auto& e : cs.snapshot()) survivors.insert(e.content.name());
  EXPECT_EQ(survivors, expected);
  EXPECT_EQ(evicted, shadow.size() - expected.size());
}

TEST(ContentStore, LruEvictsLeastRecentlyUsed) {
  ContentStore cs(2);
  cs.insert(make_co("/a", AcctFlag::kNone), 0);
  cs.insert(make_co("/b", AcctFlag::kNone), 0);
  ASSERT_NE(cs.find(Name::parse("/a"), 1), nullptr);
  cs.insert(make_co("/c", AcctFlag::kNone), 1);
  EXPECT_TRUE(cs.contains(Name::parse("/a")));
  EXPECT_FALSE(cs.contains(Name::parse("/b")));
  EXPECT_TRUE(cs.contains(Name::parse("/c")));
  EXPECT_EQ(cs.size(), 2u);
}

TEST(Node, BatchingSumsWithinWindow) {
  NodeConfig cfg;
  cfg.id = "R";
  cfg.batch_window = 10;
  Node r(cfg);
  r.fib().add(Name{}, {9});
  r.preload(make_co("/a", AcctFlag::kDistinct));
  r.set_clock(1);
  EXPECT_EQ(count_pints(r.on_interest(Interest(Name::parse("/a"), "n1"), 0)), 0u);
  r.set_clock(5);
  EXPECT_EQ(count_pints(r.on_interest(Interest(Name::parse("/a"), "n2"), 0)), 0u);
  EXPECT_EQ(r.next_batch_deadline(), Tick{11});
  r.set_clock(10);
  EXPECT_TRUE(r.flush_batches().empty());
  r.set_clock(11);
  const auto out = r.flush_batches();
  ASSERT_EQ(out.size(), 1u);
  const auto& p = std::get<PInt>(out[0].message);
  EXPECT_EQ(p.count(), 2u);
  EXPECT_EQ(p.cdata(), (std::vector<Bytes>{"n1", "n2"}));
  EXPECT_FALSE(r.next_batch_deadline().has_value());
}

// Random traces over a small name space: checks statelessness of pInt
// handling, unicast pInts, collapsing soundness and hit accounting.
TEST(NodeProperties, RandomTraces) {
  std::mt19937_64 rng(1234);
  for (int trace = 0; trace < 50; ++trace) {
    NodeConfig cfg;
    cfg.id = "R";
    cfg.multicast = trace % 2 == 0;
    if (trace % 5 == 0) cfg.cache_capacity = 2;
    Node r(cfg);
    r.fib().add(Name{}, {100, 101});
    std::uniform_int_distribution<int> op(0, 2), nm(0, 4), face(0, 5);
    std::uniform_int_distribution<int> acct(0, 3);
    for (int step = 0; step < 300; ++step) {
      r.set_clock(static_cast<Tick>(step));
      const Name name = Name::parse("/n" + std::to_string(nm(rng)));
      std::vector<Outgoing> out;
      switch (op(rng)) {
        case 0:
          out = r.on_interest(Interest(name, "c" + std::to_string(step)),
                              static_cast<FaceId>(face(rng)));
          break;
        case 1:
          out = r.on_content(ContentObject(name, "d", static_cast<AcctFlag>(acct(rng)), 20), 100);
          break;
        default: {
          const auto pit_before = r.pit();
          const auto cs_before = r.cs().snapshot();
          out = r.on_pint(PInt(name, AcctFlag::kAggregate, "x", 1), 3);
          ASSERT_EQ(r.pit(), pit_before);
          const auto cs_after = r.cs().snapshot();
          ASSERT_EQ(cs_after.size(), cs_before.size());
          for (std::size_t i = 0; i < cs_after.size(); ++i) {
            ASSERT_EQ(cs_after[i].content, cs_before[i].content);
          }
          break;
        }
      }
      ASSERT_LE(count_pints(out), 1u);
      for (const auto& o : out) {
        if (type_of(o.message) == MessageType::kPInt) {
          ASSERT_EQ(o.face, 100u);
        }
      }
      for (const auto& [n, e] : r.pit()) ASSERT_EQ(e.forwarded_count(), 1u);
      ASSERT_EQ(r.stats().hit_pints, r.stats().accountable_cache_hits);
      if (cfg.cache_capacity) {
        ASSERT_LE(r.cs().size(), *cfg.cache_capacity);
      }
    }
  }
}

}  // namespace
}  // namespace ccnacct
