#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ccnacct/core/bytes.hpp"

namespace ccnacct {

// Leading byte of an interest payload (and therefore of each pInt cdata
// entry) telling the producer how to read the rest.
enum class PayloadKind : std::uint8_t {
  kSecCrsd = 0x10,
  kAnonymous = 0x11,
  kAnonymousSymmetric = 0x12,
  kDistinctToken = 0x20,
};

std::optional<PayloadKind> payload_kind(std::string_view payload);
Bytes wrap_payload(PayloadKind kind, std::string_view body);
// Body after the kind byte; empty view for an empty payload.
std::string_view payload_body(std::string_view payload);

// Nonce and timestamp a consumer attaches for DISTINCT accounting (and,
// blindly, to every interest).
struct DistinctToken {
  Bytes nonce;
  Tick timestamp;

  friend bool operator==(const DistinctToken&, const DistinctToken&) = default;
};

// 0x20 | len:u16 nonce | t:u64
Bytes encode_distinct_token(const DistinctToken& token);
std::optional<DistinctToken> decode_distinct_token(std::string_view payload);

}  // namespace ccnacct
