#include <gtest/gtest.h>

#include "ccnacct/analytic/analytic.hpp"
#include "ccnacct/core/codec.hpp"
#include "ccnacct/core/errors.hpp"

namespace ccnacct {
namespace {

TEST(MessageCounts, ClosedForms) {
  EXPECT_EQ(message_counts(Scheme::kEncryption, 1), (SchemeCounts{4, 2, 1}));
  EXPECT_EQ(message_counts(Scheme::kPint, 1), (SchemeCounts{2, 1, 1}));
  EXPECT_EQ(message_counts(Scheme::kCacheless, 1), (SchemeCounts{2, 2, 1}));
  for (auto s : {Scheme::kEncryption, Scheme::kPint, Scheme::kCacheless}) {
    EXPECT_EQ(message_counts(s, 0), (SchemeCounts{0, 0, 0}));
  }
}

TEST(MessageCounts, EncryptionDoublesPint) {
  for (std::uint64_t g = 0; g < 1000; g += 7) {
    const auto e = message_counts(Scheme::kEncryption, g);
    const auto p = message_counts(Scheme::kPint, g);
    EXPECT_EQ(e.p_l, 2 * p.p_l);
    EXPECT_EQ(e.p_r, 2 * p.p_r);
    if (g > 0) {
      EXPECT_GT(message_counts(Scheme::kCacheless, g).p_r, p.p_r);
    }
  }
}

TEST(MessageCounts, ParseScheme) {
  EXPECT_EQ(parse_scheme("pint"), Scheme::kPint);
  EXPECT_EQ(parse_scheme("Encryption"), Scheme::kEncryption);
  EXPECT_THROW(parse_scheme("x"), FieldError);
}

TEST(Overhead, FixedLengthName) {
  EXPECT_EQ(make_fixed_length_name(40).encoded_size(), 40u);
  EXPECT_EQ(make_fixed_length_name(5).encoded_size(), 5u);
  EXPECT_THROW(make_fixed_length_name(4), FieldError);
  EXPECT_THROW(make_fixed_length_name(260), FieldError);
}

// Byte-count oracle from the documented layout with a 40-byte name field:
//   pint    = type(1) + name(40) + ptype(2+1) + origin(2+0) + count(2+4) + ncdata(2) = 54
//   content = type(1) + name(40) + len(4) + P + acct(2+1) + expiry(2+8) + validation(2) = 60 + P
TEST(Overhead, GoldenSizes) {
  EXPECT_EQ(pint_wire_size(), 54u);
  for (std::size_t p : {0u, 10u, 1000u, 1u << 20}) EXPECT_EQ(content_wire_size(p), 60u + p);
  EXPECT_DOUBLE_EQ(overhead_ratio(1000, 40, 2, 1, 4), 54.0 / 1060.0);
}

TEST(Overhead, SizesMatchEncoder) {
  const Name n = make_fixed_length_name(40);
  EXPECT_EQ(encode(Message{PInt(n, AcctFlag::kAggregate, {}, 1)}).size(), pint_wire_size());
  EXPECT_EQ(encode(Message{ContentObject(n, Bytes(1234, 'x'), AcctFlag::kAggregate, 1)}).size(),
            content_wire_size(1234));
}

TEST(Overhead, ConsumerLinkIsFree) {
  for (std::size_t links : {2u, 3u, 4u}) {
    const auto profile = overhead_profile(100, 40, links);
    ASSERT_EQ(profile.size(), links);
    EXPECT_EQ(profile[0].ratio, 0.0);
    EXPECT_EQ(profile[0].extra_bytes, 0u);
    for (std::size_t i = 1; i < links; ++i) EXPECT_DOUBLE_EQ(profile[i].ratio, 54.0 / 160.0);
  }
  EXPECT_THROW(overhead_ratio(10, 40, 0, 1, 3), FieldError);
  EXPECT_THROW(overhead_ratio(10, 40, 4, 1, 3), FieldError);
}

TEST(Overhead, DecreasesWithPayload) {
  double prev = 1e9;
  for (std::size_t p : {10u, 100u, 1000u, 10000u, 100000u, 1000000u}) {
    const double r = overhead_ratio(p, 40, 2, 1, 2);
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(Overhead, MoreLinksMoreExtraBytes) {
  for (std::size_t p : {10u, 1000u, 1000000u}) {
    EXPECT_EQ(total_extra_bytes(p, 40, 2), 54u);
    EXPECT_EQ(total_extra_bytes(p, 40, 4), 3u * 54u);
    EXPECT_GT(total_extra_bytes(p, 40, 4), total_extra_bytes(p, 40, 2));
  }
}

}  // namespace
}  // namespace ccnacct
