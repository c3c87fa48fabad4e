#include "ccnacct/crsd/payload.hpp"

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

std::optional<PayloadKind> payload_kind(std::string_view payload) {
  if (payload.empty()) return std::nullopt;
  switch (static_cast<std::uint8_t>(payload[0])) {
    case 0x10: return PayloadKind::kSecCrsd;
    case 0x11: return PayloadKind::kAnonymous;
    case 0x12: return PayloadKind::kAnonymousSymmetric;
    case 0x20: return PayloadKind::kDistinctToken;
    default: return std::nullopt;
  }
}

Bytes wrap_payload(PayloadKind kind, std::string_view body) {
  Bytes out;
  out.reserve(body.size() + 1);
  out.push_back(static_cast<char>(kind));
  out.append(body);
  return out;
}

std::string_view payload_body(std::string_view payload) {
  return payload.empty() ? payload : payload.substr(1);
}

Bytes encode_distinct_token(const DistinctToken& token) {
  Bytes out;
  out.push_back(static_cast<char>(PayloadKind::kDistinctToken));
  put_u16(out, static_cast<std::uint16_t>(token.nonce.size()));
  out.append(token.nonce);
  put_u64(out, token.timestamp);
  return out;
}

std::optional<DistinctToken> decode_distinct_token(std::string_view payload) {
  if (payload_kind(payload) != PayloadKind::kDistinctToken) return std::nullopt;
  try {
    ByteReader in(payload_body(payload));
    DistinctToken token{Bytes(in.blob16()), 0};
    token.timestamp = in.u64();
    if (!in.done() || token.nonce.empty()) return std::nullopt;
    return token;
  } catch (const MalformedMessage&) {
    return std::nullopt;
  }
}

}  // namespace ccnacct
