#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "ccnacct/core/message.hpp"
#include "ccnacct/crsd/keys.hpp"
#include "ccnacct/crsd/replay_window.hpp"

namespace ccnacct {

// How consumers wrap their Sec-CrSD. The producer accepts all three; the
// mode is what it advertises in NACK requirements.
enum class CrsdMode : std::uint8_t { kPlain, kAnonymous, kAnonymousSymmetric };

std::string_view to_string(CrsdMode mode);
CrsdMode parse_crsd_mode(std::string_view text);

enum class RejectReason : std::uint8_t {
  kBadTag,
  kStale,
  kReplay,
  kDecryptFailure,
  kMalformed,
  kUnknownKey,
  kTypeMismatch,
  kMissingCrsd,
};

std::string_view to_string(RejectReason reason);

struct ProducerConfig {
  Name prefix;
  AcctFlag default_acct = AcctFlag::kAggregate;
  // Per-name (or per-prefix, longest match wins) override of default_acct.
  std::map<Name, AcctFlag> acct_policy;
  Tick expiry = 1000;                // cache lifetime of served content
  bool zero_cache_individual = true;
  std::size_t payload_size = 1 << 20;
  std::shared_ptr<const KeyRegistry> keys;
  TagScheme tag_scheme = TagScheme::kHmacSha256;
  CrsdMode crsd_mode = CrsdMode::kAnonymous;
  CrsdForm crsd_form = CrsdForm::kPseudonym;
  unsigned nonce_bits = kDefaultNonceBits;
  Tick replay_window = kDefaultReplayWindow;
  Tick dedup_window = kDefaultReplayWindow;
  bool log_requests = false;
};

struct AggregateCounter {
  std::uint64_t total = 0;   // cache hits and collapsed interests reported by pInts, plus direct
  std::uint64_t direct = 0;  // interests served by the producer itself
  std::uint64_t reported() const { return total - direct; }
};

struct DistinctCounter {
  std::uint64_t accepted = 0;
  std::uint64_t duplicates = 0;
  std::set<std::pair<Bytes, std::uint64_t>> seen;  // (nonce, timestamp / dedup_window)
};

struct Rejection {
  Bytes origin;  // pInt origin; empty for a direct interest
  Name name;
  RejectReason reason;
  Tick at;
};

struct RequestRecord {
  Name name;
  Bytes consumer;  // CrSD identity, or the hex nonce for DISTINCT
  Tick at;
};

struct LedgerSet {
  std::map<Name, AggregateCounter> aggregate;
  std::map<Name, DistinctCounter> distinct;
  std::map<std::pair<Bytes, Name>, std::uint64_t> individual;
  std::vector<Rejection> rejections;
  std::map<Bytes, std::uint64_t> rejections_by_origin;
  std::map<Name, std::uint64_t> rejections_by_name;
  std::map<Name, std::uint64_t> key_requests;  // encryption-scheme key fetches per content
  std::uint64_t ignored = 0;
  std::optional<std::vector<RequestRecord>> requests_log;
};

struct IngestReport {
  std::uint64_t accepted = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t rejected = 0;
  std::uint64_t ignored = 0;
};

struct LedgerRow {
  Name name;
  AcctFlag type;
  Bytes consumer;  // individual rows only
  std::uint64_t count = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t rejections = 0;

  friend bool operator==(const LedgerRow&, const LedgerRow&) = default;
};

struct LedgerSelector {
  std::optional<Name> prefix;
  std::optional<Bytes> consumer;
};

// Name of the decryption key for one request under the encryption scheme.
Name key_name_for(const Name& content, std::uint64_t sequence);
// The content a key name refers to, if `name` has the <content>/KEY/<seq> shape.
std::optional<Name> key_target(const Name& name);

class Producer {
 public:
  explicit Producer(ProducerConfig config);

  const ProducerConfig& config() const { return config_; }
  const LedgerSet& ledger() const { return ledger_; }

  AcctFlag acct_for(const Name& name) const;
  bool serves(const Name& name) const { return config_.prefix.is_prefix_of(name); }

  IngestReport ingest_pint(const PInt& pint, Tick clock);
  // Throws FieldError for a name outside the producer prefix.
  std::variant<ContentObject, Nack> ingest_interest(const Interest& interest, Tick clock);

  // Content as the producer would serve it, for pre-warming caches.
  ContentObject content_for(const Name& name) const { return make_content(name, acct_for(name)); }

  std::vector<LedgerRow> query(AcctFlag kind, const LedgerSelector& selector = {}) const;
  std::uint64_t total(AcctFlag kind, const LedgerSelector& selector = {}) const;

  // NACK requirements text advertised for INDIVIDUAL content.
  Bytes requirements(const Name& name) const;

  // columns: name,type,consumer,count,duplicates,rejections
  void write_csv(std::ostream& out) const;

 private:
  struct Verified {
    Bytes consumer;
  };

  std::variant<Verified, RejectReason> verify_blob(std::string_view blob, const Name& name);
  // Returns true when (nonce, window) was new; false on duplicate.
  std::optional<bool> record_distinct(std::string_view blob, const Name& name, Tick clock);
  void reject(const Bytes& origin, const Name& name, RejectReason reason, Tick at,
              IngestReport& report);
  ContentObject make_content(const Name& name, AcctFlag acct) const;

  ProducerConfig config_;
  LedgerSet ledger_;
  ReplayWindow window_;
  std::shared_ptr<const Bytes> payload_;
};

}  // namespace ccnacct
