#include "ccnacct/crsd/keys.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <sodium.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

// Longest prefix among (consumer, prefix) keys that covers name.
template <typename Map>
const typename Map::mapped_type* match_consumer(const Map& map, const Bytes& consumer,
                                                const Name& name) {
  const typename Map::mapped_type* best = nullptr;
  std::size_t depth = 0;
  for (const auto& [key, value] : map) {
    if (key.first != consumer || !key.second.is_prefix_of(name)) continue;
    if (!best || key.second.size() > depth) {
      best = &value;
      depth = key.second.size();
    }
  }
  return best;
}

Bytes hex_field(const std::string& text, std::size_t expected, int line) {
  Bytes out;
  try {
    out = from_hex(text);
  } catch (const FieldError&) {
    throw ConfigError(fmt::format("key file line {}: bad hex", line));
  }
  if (expected != 0 && out.size() != expected) {
    throw ConfigError(fmt::format("key file line {}: expected {} bytes, got {}", line, expected,
                                  out.size()));
  }
  return out;
}

}  // namespace

void KeyRegistry::add_producer(Name prefix, BoxKeyPair keys) {
  producers_.insert_or_assign(std::move(prefix), std::move(keys));
}

void KeyRegistry::add_mac(Bytes consumer, Name prefix, Bytes key) {
  macs_.insert_or_assign({std::move(consumer), std::move(prefix)}, std::move(key));
}

void KeyRegistry::add_signer(Bytes consumer, Bytes public_key, Bytes secret_key) {
  signers_.insert_or_assign(std::move(consumer),
                            std::pair{std::move(public_key), std::move(secret_key)});
}

void KeyRegistry::add_symmetric(Bytes key_tag, Bytes consumer, Name prefix, Bytes key) {
  symmetric_tags_.insert_or_assign({consumer, prefix}, key_tag);
  symmetric_.insert_or_assign(std::move(key_tag),
                              SymmetricKey{std::move(consumer), std::move(prefix), std::move(key)});
}

const Name* KeyRegistry::match_producer(const Name& name) const {
  const Name* best = nullptr;
  for (const auto& [prefix, keys] : producers_) {
    if (prefix.is_prefix_of(name) && (!best || prefix.size() > best->size())) best = &prefix;
  }
  return best;
}

bool KeyRegistry::has_producer_for(const Name& name) const { return match_producer(name) != nullptr; }

const Name& KeyRegistry::producer_prefix(const Name& name) const {
  const Name* prefix = match_producer(name);
  if (!prefix) throw UnknownKey(fmt::format("no producer key covers {}", name.to_uri()));
  return *prefix;
}

const BoxKeyPair& KeyRegistry::producer_keys(const Name& name) const {
  return producers_.at(producer_prefix(name));
}

TagKey KeyRegistry::tag_key(const Bytes& consumer, const Name& name, TagScheme scheme) const {
  if (scheme == TagScheme::kHmacSha256) {
    const Bytes* key = match_consumer(macs_, consumer, name);
    if (!key) throw UnknownKey(fmt::format("no MAC key for {} on {}", consumer, name.to_uri()));
    return TagKey::hmac(*key);
  }
  auto it = signers_.find(consumer);
  if (it == signers_.end() || it->second.second.empty()) {
    throw UnknownKey(fmt::format("no signing key for {}", consumer));
  }
  return TagKey::ed25519(it->second.second);
}

VerifyKey KeyRegistry::verify_key(const Bytes& consumer, const Name& name, TagScheme scheme) const {
  if (scheme == TagScheme::kHmacSha256) {
    const Bytes* key = match_consumer(macs_, consumer, name);
    if (!key) throw UnknownKey(fmt::format("no MAC key for {} on {}", consumer, name.to_uri()));
    return VerifyKey::hmac(*key);
  }
  auto it = signers_.find(consumer);
  if (it == signers_.end()) throw UnknownKey(fmt::format("no public key for {}", consumer));
  return VerifyKey::ed25519(it->second.first);
}

const KeyRegistry::SymmetricKey& KeyRegistry::symmetric_by_tag(const Bytes& key_tag) const {
  auto it = symmetric_.find(key_tag);
  if (it == symmetric_.end()) throw UnknownKey(fmt::format("unknown key tag {}", to_hex(key_tag)));
  return it->second;
}

const Bytes& KeyRegistry::symmetric_tag_for(const Bytes& consumer, const Name& name) const {
  const Bytes* tag = match_consumer(symmetric_tags_, consumer, name);
  if (!tag) throw UnknownKey(fmt::format("no symmetric key for {} on {}", consumer, name.to_uri()));
  return *tag;
}

KeyRegistry KeyRegistry::load(std::istream& in) {
  KeyRegistry reg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string token; fields >> token;) f.push_back(token);
    if (f.empty()) continue;
    auto name_at = [&](std::size_t i) {
      try {
        return Name::parse(f[i]);
      } catch (const FieldError& e) {
        throw ConfigError(fmt::format("key file line {}: {}", number, e.what()));
      }
    };
    const std::string& kind = f[0];
    if (kind == "producer" && f.size() == 4) {
      reg.add_producer(name_at(1), BoxKeyPair{hex_field(f[2], 32, number), hex_field(f[3], 32, number)});
    } else if (kind == "mac" && f.size() == 4) {
      reg.add_mac(f[1], name_at(2), hex_field(f[3], 32, number));
    } else if (kind == "signer" && (f.size() == 3 || f.size() == 4)) {
      reg.add_signer(f[1], hex_field(f[2], 32, number),
                     f.size() == 4 ? hex_field(f[3], 64, number) : Bytes{});
    } else if (kind == "symmetric" && f.size() == 5) {
      reg.add_symmetric(hex_field(f[1], 0, number), f[2], name_at(3), hex_field(f[4], 32, number));
    } else {
      throw ConfigError(fmt::format("key file line {}: cannot parse '{}'", number, line));
    }
  }
  return reg;
}

KeyRegistry KeyRegistry::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open key file {}", path));
  return load(in);
}

void KeyRegistry::save(std::ostream& out) const {
  for (const auto& [prefix, keys] : producers_) {
    out << fmt::format("producer {} {} {}\n", prefix.to_uri(), to_hex(keys.public_key),
                       to_hex(keys.secret_key));
  }
  for (const auto& [key, value] : macs_) {
    out << fmt::format("mac {} {} {}\n", key.first, key.second.to_uri(), to_hex(value));
  }
  for (const auto& [consumer, pair] : signers_) {
    out << fmt::format("signer {} {}", consumer, to_hex(pair.first));
    if (!pair.second.empty()) out << ' ' << to_hex(pair.second);
    out << '\n';
  }
  for (const auto& [tag, sym] : symmetric_) {
    out << fmt::format("symmetric {} {} {} {}\n", to_hex(tag), sym.consumer, sym.prefix.to_uri(),
                       to_hex(sym.key));
  }
}

KeyRegistry KeyRegistry::generate(const std::vector<Bytes>& consumers,
                                  const std::vector<Name>& producer_prefixes, std::uint64_t seed) {
  ensure_sodium();
  Rng rng(seed);
  KeyRegistry reg;
  for (const auto& prefix : producer_prefixes) reg.add_producer(prefix, box_keypair(rng));
  for (const auto& consumer : consumers) {
    const Bytes seed32 = draw_bytes(rng, crypto_sign_SEEDBYTES);
    Bytes pk(crypto_sign_PUBLICKEYBYTES, '\0');
    Bytes sk(crypto_sign_SECRETKEYBYTES, '\0');
    crypto_sign_seed_keypair(reinterpret_cast<unsigned char*>(pk.data()),
                             reinterpret_cast<unsigned char*>(sk.data()),
                             reinterpret_cast<const unsigned char*>(seed32.data()));
    reg.add_signer(consumer, std::move(pk), std::move(sk));
    for (const auto& prefix : producer_prefixes) {
      reg.add_mac(consumer, prefix, draw_bytes(rng, 32));
      Bytes tag;
      do {
        tag = draw_bytes(rng, 8);
      } while (reg.symmetric_.contains(tag));
      reg.add_symmetric(std::move(tag), consumer, prefix, draw_bytes(rng, 32));
    }
  }
  return reg;
}

}  // namespace ccnacct
