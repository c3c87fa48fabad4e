#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccnacct/crsd/anonymous.hpp"
#include "ccnacct/crsd/crsd.hpp"

namespace ccnacct {

// Stand-in for offline key distribution. Text format, one record per line,
// '#' starts a comment:
//
//   producer  <prefix>     <pk-hex> <sk-hex>
//   mac       <consumer>   <prefix> <key-hex>
//   signer    <consumer>   <pk-hex> [<sk-hex>]
//   symmetric <key-tag-hex> <consumer> <prefix> <key-hex>
//
// Prefixes use lci:/ syntax; consumer ids are plain tokens.
class KeyRegistry {
 public:
  struct SymmetricKey {
    Bytes consumer;
    Name prefix;
    Bytes key;
  };

  void add_producer(Name prefix, BoxKeyPair keys);
  void add_mac(Bytes consumer, Name prefix, Bytes key);
  void add_signer(Bytes consumer, Bytes public_key, Bytes secret_key = {});
  void add_symmetric(Bytes key_tag, Bytes consumer, Name prefix, Bytes key);

  // Longest registered producer prefix covering `name`. Throws UnknownKey.
  const BoxKeyPair& producer_keys(const Name& name) const;
  const Name& producer_prefix(const Name& name) const;

  // Consumer side. Throws UnknownKey.
  TagKey tag_key(const Bytes& consumer, const Name& name, TagScheme scheme) const;
  // Producer side. Throws UnknownKey.
  VerifyKey verify_key(const Bytes& consumer, const Name& name, TagScheme scheme) const;

  const SymmetricKey& symmetric_by_tag(const Bytes& key_tag) const;
  // Key tag assigned to (consumer, producer prefix covering name).
  const Bytes& symmetric_tag_for(const Bytes& consumer, const Name& name) const;

  bool has_producer_for(const Name& name) const;

  static KeyRegistry load(std::istream& in);
  static KeyRegistry load_file(const std::string& path);
  void save(std::ostream& out) const;

  // Deterministic registry for simulations: one producer key pair per
  // prefix, and for every consumer a MAC key and symmetric key per prefix
  // plus an Ed25519 signing pair.
  static KeyRegistry generate(const std::vector<Bytes>& consumers,
                              const std::vector<Name>& producer_prefixes, std::uint64_t seed);

 private:
  const Name* match_producer(const Name& name) const;

  std::map<Name, BoxKeyPair> producers_;
  std::map<std::pair<Bytes, Name>, Bytes> macs_;
  std::map<Bytes, std::pair<Bytes, Bytes>> signers_;
  std::map<Bytes, SymmetricKey> symmetric_;
  std::map<std::pair<Bytes, Name>, Bytes> symmetric_tags_;
};

}  // namespace ccnacct
