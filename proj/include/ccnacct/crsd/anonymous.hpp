#pragma once

#include <string_view>

#include "ccnacct/crsd/crsd.hpp"

namespace ccnacct {

// X25519 key pair for the producer's randomized public-key encryption.
struct BoxKeyPair {
  Bytes public_key;  // 32 bytes
  Bytes secret_key;  // 32 bytes
};

BoxKeyPair box_keypair_from_seed(std::string_view seed32);
BoxKeyPair box_keypair(Rng& rng);

// A-CrSD = Enc_pk(Sec-CrSD). libsodium sealed-box layout; the ephemeral key
// comes from `rng`, so two encryptions of the same value differ while a run
// stays reproducible.
Bytes make_a_crsd(const SecCrsd& s, std::string_view producer_pk, Rng& rng);
// Throws DecryptFailure on a wrong key or tampered ciphertext, and
// MalformedMessage if the plaintext is not a Sec-CrSD.
SecCrsd open_a_crsd(std::string_view ciphertext, const BoxKeyPair& producer);

// Symmetric variant: len:u16 key_tag | nonce:24 | secretbox(Sec-CrSD).
// The cleartext key tag lets the producer pick the shared key; it makes
// interests from one consumer linkable, though identities stay hidden.
Bytes make_a_crsd_symmetric(const SecCrsd& s, std::string_view key_tag, std::string_view key,
                            Rng& rng);
Bytes symmetric_key_tag(std::string_view ciphertext);
SecCrsd open_a_crsd_symmetric(std::string_view ciphertext, std::string_view key);

}  // namespace ccnacct
