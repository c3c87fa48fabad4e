#include <array>
#include <bitset>
#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <sodium.h>

#include "ccnacct/core/errors.hpp"
#include "ccnacct/crsd/anonymous.hpp"
#include "ccnacct/crsd/collision.hpp"
#include "ccnacct/crsd/crsd.hpp"
#include "ccnacct/crsd/keys.hpp"
#include "ccnacct/crsd/payload.hpp"

namespace ccnacct {
namespace {

const Name kName = Name::parse("/prov/video/7");
const Crsd kAlice(CrsdForm::kPseudonym, "alice");

struct Keys {
  Bytes mac = Bytes(32, '\x5a');
  Bytes sign_pk = Bytes(32, '\0');
  Bytes sign_sk = Bytes(64, '\0');
  Keys() {
    ensure_sodium();
    crypto_sign_keypair(reinterpret_cast<unsigned char*>(sign_pk.data()),
                        reinterpret_cast<unsigned char*>(sign_sk.data()));
  }
};

TEST(Crsd, FormsEnforceIdentityRules) {
  EXPECT_THROW(Crsd(CrsdForm::kPseudonym, ""), FieldError);
  EXPECT_THROW(Crsd(CrsdForm::kNonceOnly, "x"), FieldError);
  EXPECT_NO_THROW(Crsd(CrsdForm::kNonceOnly, ""));
  EXPECT_EQ(parse_crsd_form("group_key_digest"), CrsdForm::kGroupKeyDigest);
  EXPECT_THROW(parse_crsd_form("nope"), FieldError);
}

TEST(Crsd, EncodeRoundTrip) {
  Rng rng(1);
  Keys k;
  const auto s = make_sec_crsd(kAlice, kName, TagKey::hmac(k.mac), 42, rng);
  EXPECT_EQ(decode_sec_crsd(encode_sec_crsd(s)), s);
  auto bytes = encode_sec_crsd(s);
  bytes.push_back('x');
  EXPECT_THROW(decode_sec_crsd(bytes), MalformedMessage);
  EXPECT_THROW(decode_sec_crsd(bytes.substr(0, 10)), MalformedMessage);
}

TEST(Crsd, NonceWidthAndDistinctness) {
  Rng rng(7);
  std::set<Bytes> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(random_nonce(rng, 128));
  EXPECT_EQ(seen.size(), 1000u);
  for (unsigned bits : {1u, 7u, 8u, 9u, 13u}) {
    for (int i = 0; i < 200; ++i) {
      const auto n = random_nonce(rng, bits);
      ASSERT_EQ(n.size(), (bits + 7) / 8);
      const unsigned top = static_cast<unsigned char>(n[0]);
      ASSERT_LT(top, 1u << (bits - (n.size() - 1) * 8));
    }
  }
}

class TagSchemes : public ::testing::TestWithParam<TagScheme> {
 protected:
  Keys k;
  TagKey tag_key() const {
    return GetParam() == TagScheme::kHmacSha256 ? TagKey::hmac(k.mac) : TagKey::ed25519(k.sign_sk);
  }
  VerifyKey verify_key() const {
    return GetParam() == TagScheme::kHmacSha256 ? VerifyKey::hmac(k.mac)
                                                : VerifyKey::ed25519(k.sign_pk);
  }
};

TEST_P(TagSchemes, AcceptsFreshValue) {
  Rng rng(3);
  ReplayWindow window;
  window.advance(1000);
  const auto s = make_sec_crsd(kAlice, kName, tag_key(), 1000, rng);
  EXPECT_EQ(verify_sec_crsd(s, kName, verify_key(), window), Verdict::kAccept);
  EXPECT_EQ(verify_sec_crsd(s, kName, verify_key(), window), Verdict::kReplay);
}

TEST_P(TagSchemes, EveryBitFlipIsRejected) {
  Rng rng(4);
  const auto s = make_sec_crsd(kAlice, kName, tag_key(), 500, rng);
  const Bytes wire = encode_sec_crsd(s);
  for (std::size_t byte = 0; byte < wire.size(); ++byte) {
    for (int bit = 0; bit < 8; ++bit) {
      Bytes flipped = wire;
      flipped[byte] = static_cast<char>(flipped[byte] ^ (1 << bit));
      ReplayWindow window;
      window.advance(500);
      Verdict v = Verdict::kBadTag;
      try {
        v = verify_sec_crsd(decode_sec_crsd(flipped), kName, verify_key(), window);
      } catch (const MalformedMessage&) {
        continue;
      }
      ASSERT_EQ(v, Verdict::kBadTag) << "byte " << byte << " bit " << bit;
    }
  }
}

TEST_P(TagSchemes, BoundToName) {
  Rng rng(5);
  ReplayWindow window;
  const auto s = make_sec_crsd(kAlice, kName, tag_key(), 0, rng);
  EXPECT_EQ(verify_sec_crsd(s, Name::parse("/prov/video/8"), verify_key(), window),
            Verdict::kBadTag);
  EXPECT_EQ(window.size(), 0u);
}

TEST_P(TagSchemes, WrongNonceWidthIsBadTag) {
  Rng rng(6);
  ReplayWindow window;
  const auto s = make_sec_crsd(kAlice, kName, tag_key(), 0, rng, 64);
  EXPECT_EQ(verify_sec_crsd(s, kName, verify_key(), window, 128), Verdict::kBadTag);
  EXPECT_EQ(verify_sec_crsd(s, kName, verify_key(), window, 64), Verdict::kAccept);
}

INSTANTIATE_TEST_SUITE_P(Both, TagSchemes,
                         ::testing::Values(TagScheme::kHmacSha256, TagScheme::kEd25519));

TEST(ReplayWindow, FreshnessMatchesRangeOracle) {
  const Tick w = 300;
  for (Tick clock : {0ull, 10ull, 299ull, 300ull, 301ull, 5000ull}) {
    ReplayWindow window(w);
    window.advance(clock);
    for (Tick t = 0; t < 6000; t += 7) {
      const bool expected = (t + w >= clock) && (t <= clock + w);
      ASSERT_EQ(window.fresh(t), expected) << clock << " " << t;
    }
  }
}

TEST(ReplayWindow, ReplayRejectedUntilStale) {
  Rng rng(8);
  Keys k;
  ReplayWindow window(300);
  window.advance(100);
  const auto s = make_sec_crsd(kAlice, kName, TagKey::hmac(k.mac), 100, rng);
  EXPECT_EQ(verify_sec_crsd(s, kName, VerifyKey::hmac(k.mac), window), Verdict::kAccept);
  for (Tick now : {150ull, 300ull, 400ull}) {
    window.advance(now);
    EXPECT_EQ(verify_sec_crsd(s, kName, VerifyKey::hmac(k.mac), window), Verdict::kReplay);
  }
  window.advance(401);
  EXPECT_EQ(verify_sec_crsd(s, kName, VerifyKey::hmac(k.mac), window), Verdict::kStaleTimestamp);
}

TEST(ReplayWindow, EvictionKeepsEverythingStillFresh) {
  ReplayWindow window(10);
  for (Tick t = 0; t < 200; ++t) {
    window.advance(t);
    window.record(std::to_string(t), t);
    // every nonce whose timestamp is still acceptable must be remembered
    for (Tick u = (t >= 10 ? t - 10 : 0); u <= t; ++u) ASSERT_TRUE(window.seen(std::to_string(u)));
  }
  EXPECT_LE(window.size(), 30u);
}

TEST(Anonymous, RoundTripAndRandomized) {
  Rng rng(9);
  Keys k;
  const auto producer = box_keypair(rng);
  const auto s = make_sec_crsd(kAlice, kName, TagKey::hmac(k.mac), 10, rng);
  std::set<Bytes> ciphertexts;
  for (int i = 0; i < 100; ++i) {
    const auto c = make_a_crsd(s, producer.public_key, rng);
    ASSERT_EQ(open_a_crsd(c, producer), s);
    ciphertexts.insert(c);
  }
  EXPECT_EQ(ciphertexts.size(), 100u);
}

TEST(Anonymous, WrongKeyOrTamperFails) {
  Rng rng(10);
  Keys k;
  const auto producer = box_keypair(rng);
  const auto other = box_keypair(rng);
  const auto s = make_sec_crsd(kAlice, kName, TagKey::hmac(k.mac), 10, rng);
  auto c = make_a_crsd(s, producer.public_key, rng);
  EXPECT_THROW(open_a_crsd(c, other), DecryptFailure);
  EXPECT_THROW(open_a_crsd(c.substr(0, 20), producer), DecryptFailure);
  c.back() = static_cast<char>(c.back() ^ 1);
  EXPECT_THROW(open_a_crsd(c, producer), DecryptFailure);
}

TEST(Anonymous, SameSeedSameCiphertext) {
  Rng a(11), b(11);
  Keys k;
  Rng setup(1);
  const auto producer = box_keypair(setup);
  const auto s = make_sec_crsd(kAlice, kName, TagKey::hmac(k.mac), 10, setup);
  EXPECT_EQ(make_a_crsd(s, producer.public_key, a), make_a_crsd(s, producer.public_key, b));
}

TEST(Anonymous, SymmetricVariant) {
  Rng rng(12);
  Keys k;
  const Bytes key(32, '\x11');
  const auto s = make_sec_crsd(kAlice, kName, TagKey::hmac(k.mac), 10, rng);
  const auto c = make_a_crsd_symmetric(s, "tag1", key, rng);
  EXPECT_EQ(symmetric_key_tag(c), "tag1");
  EXPECT_EQ(open_a_crsd_symmetric(c, key), s);
  EXPECT_NE(c, make_a_crsd_symmetric(s, "tag1", key, rng));
  EXPECT_THROW(open_a_crsd_symmetric(c, Bytes(32, '\x12')), DecryptFailure);
  EXPECT_THROW(open_a_crsd_symmetric("\x00", key), DecryptFailure);
}

TEST(Payload, KindsAndDistinctToken) {
  EXPECT_FALSE(payload_kind(""));
  EXPECT_FALSE(payload_kind("\x05zz"));
  const auto w = wrap_payload(PayloadKind::kAnonymous, "abc");
  EXPECT_EQ(payload_kind(w), PayloadKind::kAnonymous);
  EXPECT_EQ(payload_body(w), "abc");
  const DistinctToken token{"nonce", 77};
  const auto bytes = encode_distinct_token(token);
  EXPECT_EQ(decode_distinct_token(bytes), token);
  EXPECT_FALSE(decode_distinct_token(bytes.substr(0, bytes.size() - 1)));
  EXPECT_FALSE(decode_distinct_token(w));
}

// Brute-force oracle: enumerate every sequence of s draws from 2^bits values.
double enumerate_collision(unsigned bits, unsigned s) {
  const unsigned space = 1u << bits;
  unsigned total = 1, repeats = 0;
  for (unsigned i = 0; i < s; ++i) total *= space;
  for (unsigned seq = 0; seq < total; ++seq) {
    std::set<unsigned> values;
    unsigned x = seq;
    for (unsigned i = 0; i < s; ++i, x /= space) values.insert(x % space);
    if (values.size() < s) ++repeats;
  }
  return static_cast<double>(repeats) / total;
}

TEST(Collision, MatchesEnumeration) {
  EXPECT_DOUBLE_EQ(collision_probability(1, 2), 0.5);
  for (unsigned bits : {1u, 2u, 3u}) {
    for (unsigned s = 0; s <= 5; ++s) {
      const double expected = s <= 1 ? 0.0 : enumerate_collision(bits, s);
      EXPECT_NEAR(collision_probability(bits, s), expected, 1e-12) << bits << " " << s;
      EXPECT_NEAR(collision_probability_direct(bits, s), expected, 1e-12);
    }
  }
}

TEST(Collision, Boundaries) {
  EXPECT_EQ(collision_probability(128, 1), 0.0);
  EXPECT_EQ(collision_probability(128, 0), 0.0);
  EXPECT_EQ(collision_probability(8, 257), 1.0);
  EXPECT_EQ(collision_probability(1, 3), 1.0);
  EXPECT_LT(collision_probability(4, 16), 1.0);
  EXPECT_EQ(collision_probability(20000, 1'000'000), 0.0);
  EXPECT_THROW(collision_probability(0, 2), FieldError);
}

TEST(Collision, MonotoneInDraws) {
  for (unsigned bits : {8u, 16u, 32u}) {
    double prev = 0.0;
    for (std::uint64_t s = 1; s < 2000; s += 13) {
      const double p = collision_probability(bits, s);
      ASSERT_GE(p, prev);
      prev = p;
    }
  }
}

TEST(Collision, SmallProbabilityNotLostToRounding) {
  // 1 - exp(-s(s-1)/2^(N+1)) ~ s(s-1)/2^(N+1) for tiny values.
  const double p = collision_probability(128, 1000);
  const double approx = 999000.0 / std::ldexp(1.0, 129);
  EXPECT_NEAR(p / approx, 1.0, 1e-9);
}

TEST(Collision, LargeDrawPathAgreesWithDirectSum) {
  for (auto [bits, s] : std::array<std::pair<unsigned, std::uint64_t>, 4>{
           {{40, 1'500'000}, {44, 3'000'000}, {24, 2'000'000}, {30, 1'100'000}}}) {
    long double sum = 0.0L;
    const long double space = std::ldexp(1.0L, static_cast<int>(bits));
    for (std::uint64_t i = 1; i < s; ++i) sum += std::log1p(-static_cast<long double>(i) / space);
    const double expected = static_cast<double>(-std::expm1(sum));
    EXPECT_NEAR(collision_probability(bits, s), expected, 1e-12 + 1e-9 * expected)
        << bits << " " << s;
  }
}

TEST(Collision, MonteCarloEightBits) {
  std::mt19937_64 rng(2024);
  for (unsigned s : {2u, 20u, 100u}) {
    const int trials = 1'000'000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      std::bitset<256> seen;
      for (unsigned i = 0; i < s; ++i) {
        const auto v = rng() & 0xFF;
        if (seen[v]) {
          ++hits;
          break;
        }
        seen[v] = true;
      }
    }
    EXPECT_NEAR(collision_probability(8, s), static_cast<double>(hits) / trials, 0.005) << s;
  }
}

TEST(Keys, GenerateSaveLoad) {
  const auto reg = KeyRegistry::generate({"c0", "c1"}, {Name::parse("/prov")}, 99);
  std::stringstream buf;
  reg.save(buf);
  const auto loaded = KeyRegistry::load(buf);
  std::stringstream again;
  loaded.save(again);
  EXPECT_EQ(buf.str(), again.str());

  const Name name = Name::parse("/prov/x/1");
  EXPECT_EQ(loaded.producer_prefix(name), Name::parse("/prov"));
  EXPECT_FALSE(loaded.has_producer_for(Name::parse("/other")));
  EXPECT_THROW(loaded.producer_keys(Name::parse("/other")), UnknownKey);

  Rng rng(1);
  ReplayWindow window;
  for (auto scheme : {TagScheme::kHmacSha256, TagScheme::kEd25519}) {
    const auto s = make_sec_crsd(kAlice, name, loaded.tag_key("c1", name, scheme), 0, rng);
    EXPECT_EQ(verify_sec_crsd(s, name, loaded.verify_key("c1", name, scheme), window),
              Verdict::kAccept);
    EXPECT_EQ(verify_sec_crsd(s, name, loaded.verify_key("c0", name, scheme), window),
              Verdict::kBadTag);
  }
  const auto& tag = loaded.symmetric_tag_for("c0", name);
  EXPECT_EQ(loaded.symmetric_by_tag(tag).consumer, "c0");
  EXPECT_THROW(loaded.tag_key("nobody", name, TagScheme::kHmacSha256), UnknownKey);
}

TEST(Keys, RejectsBadLines) {
  std::istringstream bad("producer /p zz 00\n");
  EXPECT_THROW(KeyRegistry::load(bad), ConfigError);
  std::istringstream unknown("frobnicate a b\n");
  EXPECT_THROW(KeyRegistry::load(unknown), ConfigError);
  std::istringstream comments("# nothing\n\n");
  EXPECT_FALSE(KeyRegistry::load(comments).has_producer_for(Name::parse("/p")));
}

}  // namespace
}  // namespace ccnacct
