#include "ccnacct/crsd/anonymous.hpp"

#include <array>

#include <sodium.h>

#include "ccnacct/core/errors.hpp"
#include "ccnacct/crsd/payload.hpp"

namespace ccnacct {

namespace {

const unsigned char* u8(std::string_view s) {
  return reinterpret_cast<const unsigned char*>(s.data());
}

unsigned char* u8(Bytes& s) { return reinterpret_cast<unsigned char*>(s.data()); }

}  // namespace

BoxKeyPair box_keypair_from_seed(std::string_view seed32) {
  ensure_sodium();
  if (seed32.size() != crypto_box_SEEDBYTES) throw FieldError("box seed must be 32 bytes");
  BoxKeyPair kp{Bytes(crypto_box_PUBLICKEYBYTES, '\0'), Bytes(crypto_box_SECRETKEYBYTES, '\0')};
  crypto_box_seed_keypair(u8(kp.public_key), u8(kp.secret_key), u8(seed32));
  return kp;
}

BoxKeyPair box_keypair(Rng& rng) { return box_keypair_from_seed(draw_bytes(rng, crypto_box_SEEDBYTES)); }

Bytes make_a_crsd(const SecCrsd& s, std::string_view producer_pk, Rng& rng) {
  ensure_sodium();
  if (producer_pk.size() != crypto_box_PUBLICKEYBYTES) {
    throw FieldError("producer public key must be 32 bytes");
  }
  BoxKeyPair ephemeral = box_keypair(rng);

  Bytes hash_input = ephemeral.public_key;
  hash_input.append(producer_pk);
  std::array<unsigned char, crypto_box_NONCEBYTES> nonce{};
  crypto_generichash(nonce.data(), nonce.size(), u8(hash_input), hash_input.size(), nullptr, 0);

  const Bytes plain = encode_sec_crsd(s);
  Bytes out = ephemeral.public_key;
  out.resize(crypto_box_PUBLICKEYBYTES + crypto_box_MACBYTES + plain.size());
  const int rc = crypto_box_easy(u8(out) + crypto_box_PUBLICKEYBYTES, u8(plain), plain.size(),
                                 nonce.data(), u8(producer_pk), u8(ephemeral.secret_key));
  sodium_memzero(ephemeral.secret_key.data(), ephemeral.secret_key.size());
  // fails only for a low-order public key
  if (rc != 0) throw FieldError("producer public key rejected");
  return out;
}

SecCrsd open_a_crsd(std::string_view ciphertext, const BoxKeyPair& producer) {
  ensure_sodium();
  if (ciphertext.size() < crypto_box_SEALBYTES) throw DecryptFailure("A-CrSD too short");
  Bytes plain(ciphertext.size() - crypto_box_SEALBYTES, '\0');
  if (crypto_box_seal_open(u8(plain), u8(ciphertext), ciphertext.size(), u8(producer.public_key),
                           u8(producer.secret_key)) != 0) {
    throw DecryptFailure("A-CrSD does not open under this key");
  }
  return decode_sec_crsd(plain);
}

Bytes make_a_crsd_symmetric(const SecCrsd& s, std::string_view key_tag, std::string_view key,
                            Rng& rng) {
  ensure_sodium();
  if (key.size() != crypto_secretbox_KEYBYTES) throw FieldError("symmetric key must be 32 bytes");
  const Bytes plain = encode_sec_crsd(s);
  Bytes out;
  put_u16(out, static_cast<std::uint16_t>(key_tag.size()));
  out.append(key_tag);
  const Bytes nonce = draw_bytes(rng, crypto_secretbox_NONCEBYTES);
  out.append(nonce);
  const std::size_t header = out.size();
  out.resize(header + crypto_secretbox_MACBYTES + plain.size());
  crypto_secretbox_easy(u8(out) + header, u8(plain), plain.size(), u8(nonce), u8(key));
  return out;
}

Bytes symmetric_key_tag(std::string_view ciphertext) {
  ByteReader in(ciphertext);
  return Bytes(in.blob16());
}

SecCrsd open_a_crsd_symmetric(std::string_view ciphertext, std::string_view key) {
  ensure_sodium();
  if (key.size() != crypto_secretbox_KEYBYTES) throw FieldError("symmetric key must be 32 bytes");
  ByteReader in(ciphertext);
  std::string_view nonce;
  try {
    in.blob16();
    nonce = in.take(crypto_secretbox_NONCEBYTES);
  } catch (const MalformedMessage&) {
    throw DecryptFailure("symmetric A-CrSD header truncated");
  }
  const std::string_view boxed = in.take(in.remaining());
  if (boxed.size() < crypto_secretbox_MACBYTES) throw DecryptFailure("symmetric A-CrSD too short");
  Bytes plain(boxed.size() - crypto_secretbox_MACBYTES, '\0');
  if (crypto_secretbox_open_easy(u8(plain), u8(boxed), boxed.size(), u8(nonce), u8(key)) != 0) {
    throw DecryptFailure("symmetric A-CrSD does not open under this key");
  }
  return decode_sec_crsd(plain);
}

}  // namespace ccnacct
