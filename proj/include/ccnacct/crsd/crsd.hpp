#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ccnacct/core/bytes.hpp"
#include "ccnacct/core/name.hpp"
#include "ccnacct/crsd/replay_window.hpp"

namespace ccnacct {

using Rng = std::mt19937_64;

inline constexpr unsigned kDefaultNonceBits = 128;

// Consumer-specific data forms a producer may require.
enum class CrsdForm : std::uint8_t {
  kConsumerKeyDigest = 1,
  kGroupKeyDigest = 2,
  kPseudonym = 3,
  kNonceOnly = 4,
};

std::string_view to_string(CrsdForm form);
CrsdForm parse_crsd_form(std::string_view text);

class Crsd {
 public:
  // identity must be non-empty unless form is kNonceOnly (then it must be empty).
  Crsd(CrsdForm form, Bytes identity);

  CrsdForm form() const { return form_; }
  const Bytes& identity() const { return identity_; }

  // form:u8 len:u16 identity
  void encode(Bytes& out) const;
  static Crsd decode(ByteReader& in);

  friend bool operator==(const Crsd&, const Crsd&) = default;

 private:
  CrsdForm form_;
  Bytes identity_;
};

// Instantiations of the keyed unforgeable-tag function f_k.
enum class TagScheme : std::uint8_t {
  kHmacSha256 = 1,  // key shared between consumer and producer
  kEd25519 = 2,     // consumer signs, producer verifies with the public key
};

std::string_view to_string(TagScheme scheme);
TagScheme parse_tag_scheme(std::string_view text);

// Consumer-side tagging key.
class TagKey {
 public:
  static TagKey hmac(Bytes shared_key);      // 32 bytes
  static TagKey ed25519(Bytes secret_key);   // 64-byte libsodium secret key

  TagScheme scheme() const { return scheme_; }
  const Bytes& material() const { return material_; }

 private:
  TagKey(TagScheme scheme, Bytes material) : scheme_(scheme), material_(std::move(material)) {}
  TagScheme scheme_;
  Bytes material_;
};

// Producer-side verification key.
class VerifyKey {
 public:
  static VerifyKey hmac(Bytes shared_key);
  static VerifyKey ed25519(Bytes public_key);  // 32 bytes

  TagScheme scheme() const { return scheme_; }
  const Bytes& material() const { return material_; }

 private:
  VerifyKey(TagScheme scheme, Bytes material) : scheme_(scheme), material_(std::move(material)) {}
  TagScheme scheme_;
  Bytes material_;
};

// CrSD || r || t together with f_k(CrSD || r || t || name).
struct SecCrsd {
  Crsd crsd;
  Bytes nonce;
  Tick timestamp;
  Bytes tag;

  friend bool operator==(const SecCrsd&, const SecCrsd&) = default;
};

// crsd | len:u16 nonce | t:u64 | len:u16 tag
Bytes encode_sec_crsd(const SecCrsd& s);
// Throws MalformedMessage.
SecCrsd decode_sec_crsd(std::string_view bytes);

// The exact byte string the tag covers: crsd | len:u16 nonce | t:u64 | name.
Bytes tag_input(const Crsd& crsd, std::string_view nonce, Tick timestamp, const Name& name);

// n bytes drawn from rng.
Bytes draw_bytes(Rng& rng, std::size_t n);

// ceil(bits/8) bytes; bits above `bits` in the leading byte are zero.
Bytes random_nonce(Rng& rng, unsigned bits);

SecCrsd make_sec_crsd(const Crsd& crsd, const Name& name, const TagKey& key, Tick clock, Rng& rng,
                      unsigned nonce_bits = kDefaultNonceBits);

enum class Verdict : std::uint8_t {
  kAccept,
  kBadTag,
  kStaleTimestamp,
  kReplay,
};

std::string_view to_string(Verdict verdict);

// Accepts iff the tag verifies for `name`, the timestamp lies inside the
// window's acceptance range and the nonce was not accepted before. Accepted
// nonces are recorded in `window`. A nonce of the wrong width is a bad tag.
Verdict verify_sec_crsd(const SecCrsd& s, const Name& name, const VerifyKey& key,
                        ReplayWindow& window, unsigned nonce_bits = kDefaultNonceBits);

// Initializes libsodium once; safe to call from any thread.
void ensure_sodium();

}  // namespace ccnacct
