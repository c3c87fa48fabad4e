#include "ccnacct/crsd/crsd.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include <fmt/format.h>
#include <sodium.h>

#include "ccnacct/core/codec.hpp"
#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const unsigned char* u8(std::string_view s) {
  return reinterpret_cast<const unsigned char*>(s.data());
}

}  // namespace

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw Error("libsodium failed to initialize");
  });
}

std::string_view to_string(CrsdForm form) {
  switch (form) {
    case CrsdForm::kConsumerKeyDigest: return "CONSUMER_KEY_DIGEST";
    case CrsdForm::kGroupKeyDigest: return "GROUP_KEY_DIGEST";
    case CrsdForm::kPseudonym: return "PSEUDONYM";
    case CrsdForm::kNonceOnly: return "NONCE_ONLY";
  }
  return "?";
}

CrsdForm parse_crsd_form(std::string_view text) {
  const auto t = lower(text);
  if (t == "consumer_key_digest") return CrsdForm::kConsumerKeyDigest;
  if (t == "group_key_digest") return CrsdForm::kGroupKeyDigest;
  if (t == "pseudonym") return CrsdForm::kPseudonym;
  if (t == "nonce_only") return CrsdForm::kNonceOnly;
  throw FieldError(fmt::format("unknown CrSD form '{}'", text));
}

std::string_view to_string(TagScheme scheme) {
  return scheme == TagScheme::kHmacSha256 ? "hmac" : "ed25519";
}

TagScheme parse_tag_scheme(std::string_view text) {
  const auto t = lower(text);
  if (t == "hmac" || t == "hmac-sha256") return TagScheme::kHmacSha256;
  if (t == "ed25519" || t == "signature") return TagScheme::kEd25519;
  throw FieldError(fmt::format("unknown tag scheme '{}'", text));
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kAccept: return "ACCEPT";
    case Verdict::kBadTag: return "BAD_TAG";
    case Verdict::kStaleTimestamp: return "STALE_TIMESTAMP";
    case Verdict::kReplay: return "REPLAY";
  }
  return "?";
}

Crsd::Crsd(CrsdForm form, Bytes identity) : form_(form), identity_(std::move(identity)) {
  const auto raw = static_cast<std::uint8_t>(form_);
  if (raw < 1 || raw > 4) throw FieldError("CrSD form out of range");
  if (form_ == CrsdForm::kNonceOnly && !identity_.empty()) {
    throw FieldError("NONCE_ONLY CrSD carries no identity");
  }
  if (form_ != CrsdForm::kNonceOnly && identity_.empty()) {
    throw FieldError("CrSD identity must not be empty");
  }
  if (identity_.size() > 0xFFFF) throw OversizeField("CrSD identity too long");
}

void Crsd::encode(Bytes& out) const {
  out.push_back(static_cast<char>(form_));
  put_u16(out, static_cast<std::uint16_t>(identity_.size()));
  out.append(identity_);
}

Crsd Crsd::decode(ByteReader& in) {
  const auto form = in.u8();
  Bytes identity(in.blob16());
  try {
    return Crsd(static_cast<CrsdForm>(form), std::move(identity));
  } catch (const FieldError& e) {
    throw MalformedMessage(e.what());
  }
}

TagKey TagKey::hmac(Bytes shared_key) {
  if (shared_key.size() != crypto_auth_hmacsha256_KEYBYTES) {
    throw FieldError("HMAC key must be 32 bytes");
  }
  return TagKey(TagScheme::kHmacSha256, std::move(shared_key));
}

TagKey TagKey::ed25519(Bytes secret_key) {
  if (secret_key.size() != crypto_sign_SECRETKEYBYTES) {
    throw FieldError("Ed25519 secret key must be 64 bytes");
  }
  return TagKey(TagScheme::kEd25519, std::move(secret_key));
}

VerifyKey VerifyKey::hmac(Bytes shared_key) {
  if (shared_key.size() != crypto_auth_hmacsha256_KEYBYTES) {
    throw FieldError("HMAC key must be 32 bytes");
  }
  return VerifyKey(TagScheme::kHmacSha256, std::move(shared_key));
}

VerifyKey VerifyKey::ed25519(Bytes public_key) {
  if (public_key.size() != crypto_sign_PUBLICKEYBYTES) {
    throw FieldError("Ed25519 public key must be 32 bytes");
  }
  return VerifyKey(TagScheme::kEd25519, std::move(public_key));
}

Bytes encode_sec_crsd(const SecCrsd& s) {
  Bytes out;
  s.crsd.encode(out);
  put_u16(out, static_cast<std::uint16_t>(s.nonce.size()));
  out.append(s.nonce);
  put_u64(out, s.timestamp);
  put_u16(out, static_cast<std::uint16_t>(s.tag.size()));
  out.append(s.tag);
  return out;
}

SecCrsd decode_sec_crsd(std::string_view bytes) {
  ByteReader in(bytes);
  Crsd crsd = Crsd::decode(in);
  Bytes nonce(in.blob16());
  const Tick t = in.u64();
  Bytes tag(in.blob16());
  if (!in.done()) throw MalformedMessage("trailing bytes after Sec-CrSD");
  return SecCrsd{std::move(crsd), std::move(nonce), t, std::move(tag)};
}

Bytes tag_input(const Crsd& crsd, std::string_view nonce, Tick timestamp, const Name& name) {
  Bytes out;
  crsd.encode(out);
  put_u16(out, static_cast<std::uint16_t>(nonce.size()));
  out.append(nonce);
  put_u64(out, timestamp);
  encode_name(out, name);
  return out;
}

Bytes draw_bytes(Rng& rng, std::size_t n) {
  Bytes out;
  out.reserve(n + 8);
  while (out.size() < n) {
    std::uint64_t word = rng();
    for (int i = 0; i < 8 && out.size() < n; ++i) {
      out.push_back(static_cast<char>(word & 0xFF));
      word >>= 8;
    }
  }
  return out;
}

Bytes random_nonce(Rng& rng, unsigned bits) {
  if (bits == 0) throw FieldError("nonce needs at least one bit");
  const std::size_t len = (bits + 7) / 8;
  Bytes nonce = draw_bytes(rng, len);
  const unsigned spare = static_cast<unsigned>(len * 8 - bits);
  nonce[0] = static_cast<char>(static_cast<unsigned char>(nonce[0]) & (0xFFu >> spare));
  return nonce;
}

SecCrsd make_sec_crsd(const Crsd& crsd, const Name& name, const TagKey& key, Tick clock, Rng& rng,
                      unsigned nonce_bits) {
  ensure_sodium();
  Bytes nonce = random_nonce(rng, nonce_bits);
  const Bytes input = tag_input(crsd, nonce, clock, name);
  Bytes tag;
  if (key.scheme() == TagScheme::kHmacSha256) {
    tag.resize(crypto_auth_hmacsha256_BYTES);
    crypto_auth_hmacsha256(reinterpret_cast<unsigned char*>(tag.data()), u8(input), input.size(),
                           u8(key.material()));
  } else {
    tag.resize(crypto_sign_BYTES);
    crypto_sign_detached(reinterpret_cast<unsigned char*>(tag.data()), nullptr, u8(input),
                         input.size(), u8(key.material()));
  }
  return SecCrsd{crsd, std::move(nonce), clock, std::move(tag)};
}

namespace {

bool nonce_has_width(const Bytes& nonce, unsigned bits) {
  const std::size_t len = (bits + 7) / 8;
  if (nonce.size() != len) return false;
  const unsigned spare = static_cast<unsigned>(len * 8 - bits);
  return (static_cast<unsigned char>(nonce[0]) & ~(0xFFu >> spare) & 0xFFu) == 0;
}

bool tag_valid(const SecCrsd& s, const Name& name, const VerifyKey& key) {
  const Bytes input = tag_input(s.crsd, s.nonce, s.timestamp, name);
  if (key.scheme() == TagScheme::kHmacSha256) {
    return s.tag.size() == crypto_auth_hmacsha256_BYTES &&
           crypto_auth_hmacsha256_verify(u8(s.tag), u8(input), input.size(),
                                         u8(key.material())) == 0;
  }
  return s.tag.size() == crypto_sign_BYTES &&
         crypto_sign_verify_detached(u8(s.tag), u8(input), input.size(), u8(key.material())) == 0;
}

}  // namespace

Verdict verify_sec_crsd(const SecCrsd& s, const Name& name, const VerifyKey& key,
                        ReplayWindow& window, unsigned nonce_bits) {
  ensure_sodium();
  if (!nonce_has_width(s.nonce, nonce_bits) || !tag_valid(s, name, key)) return Verdict::kBadTag;
  if (!window.fresh(s.timestamp)) return Verdict::kStaleTimestamp;
  if (window.seen(s.nonce)) return Verdict::kReplay;
  window.record(s.nonce, s.timestamp);
  return Verdict::kAccept;
}

}  // namespace ccnacct
