#include "ccnacct/producer/producer.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"
#include "ccnacct/crsd/anonymous.hpp"
#include "ccnacct/crsd/payload.hpp"

namespace ccnacct {

namespace {

constexpr std::string_view kKeyComponent = "KEY";

RejectReason from_verdict(Verdict v) {
  switch (v) {
    case Verdict::kBadTag: return RejectReason::kBadTag;
    case Verdict::kStaleTimestamp: return RejectReason::kStale;
    case Verdict::kReplay: return RejectReason::kReplay;
    case Verdict::kAccept: break;
  }
  throw Error("accepting verdict has no reject reason");
}

bool selected(const LedgerSelector& sel, const Name& name, const Bytes* consumer) {
  if (sel.prefix && !sel.prefix->is_prefix_of(name)) return false;
  if (sel.consumer && (!consumer || *consumer != *sel.consumer)) return false;
  return true;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string_view to_string(CrsdMode mode) {
  switch (mode) {
    case CrsdMode::kPlain: return "plain";
    case CrsdMode::kAnonymous: return "anon";
    case CrsdMode::kAnonymousSymmetric: return "anon-sym";
  }
  return "?";
}

CrsdMode parse_crsd_mode(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "plain") return CrsdMode::kPlain;
  if (t == "anon" || t == "anonymous") return CrsdMode::kAnonymous;
  if (t == "anon-sym" || t == "symmetric") return CrsdMode::kAnonymousSymmetric;
  throw FieldError(fmt::format("unknown CrSD mode '{}'", text));
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kBadTag: return "BAD_TAG";
    case RejectReason::kStale: return "STALE";
    case RejectReason::kReplay: return "REPLAY";
    case RejectReason::kDecryptFailure: return "DECRYPT_FAILURE";
    case RejectReason::kMalformed: return "MALFORMED";
    case RejectReason::kUnknownKey: return "UNKNOWN_KEY";
    case RejectReason::kTypeMismatch: return "TYPE_MISMATCH";
    case RejectReason::kMissingCrsd: return "MISSING_CRSD";
  }
  return "?";
}

Name key_name_for(const Name& content, std::uint64_t sequence) {
  return content.append(Bytes(kKeyComponent)).append(std::to_string(sequence));
}

std::optional<Name> key_target(const Name& name) {
  if (name.size() < 3 || name[name.size() - 2] != kKeyComponent) return std::nullopt;
  return name.prefix(name.size() - 2);
}

Producer::Producer(ProducerConfig config)
    : config_(std::move(config)),
      window_(config_.replay_window),
      payload_(std::make_shared<const Bytes>(config_.payload_size, 'x')) {
  if (config_.dedup_window == 0) throw ConfigError("dedup window must be positive");
  if (config_.log_requests) ledger_.requests_log.emplace();
}

AcctFlag Producer::acct_for(const Name& name) const {
  const Name* best = nullptr;
  AcctFlag flag = config_.default_acct;
  for (const auto& [prefix, f] : config_.acct_policy) {
    if (prefix.is_prefix_of(name) && (!best || prefix.size() > best->size())) {
      best = &prefix;
      flag = f;
    }
  }
  return flag;
}

void Producer::reject(const Bytes& origin, const Name& name, RejectReason reason, Tick at,
                      IngestReport& report) {
  ledger_.rejections.push_back(Rejection{origin, name, reason, at});
  ++ledger_.rejections_by_origin[origin];
  ++ledger_.rejections_by_name[name];
  ++report.rejected;
}

std::variant<Producer::Verified, RejectReason> Producer::verify_blob(std::string_view blob,
                                                                     const Name& name) {
  if (blob.empty()) return RejectReason::kMissingCrsd;
  if (!config_.keys) return RejectReason::kUnknownKey;
  const auto kind = payload_kind(blob);
  if (!kind) return RejectReason::kMalformed;
  const auto body = payload_body(blob);
  try {
    std::optional<SecCrsd> s;
    switch (*kind) {
      case PayloadKind::kSecCrsd:
        s = decode_sec_crsd(body);
        break;
      case PayloadKind::kAnonymous:
        s = open_a_crsd(body, config_.keys->producer_keys(name));
        break;
      case PayloadKind::kAnonymousSymmetric: {
        const auto& sym = config_.keys->symmetric_by_tag(symmetric_key_tag(body));
        if (!sym.prefix.is_prefix_of(name)) return RejectReason::kUnknownKey;
        s = open_a_crsd_symmetric(body, sym.key);
        break;
      }
      case PayloadKind::kDistinctToken:
        return RejectReason::kMalformed;
    }
    if (s->crsd.identity().empty()) return RejectReason::kUnknownKey;
    const auto key = config_.keys->verify_key(s->crsd.identity(), name, config_.tag_scheme);
    const Verdict v = verify_sec_crsd(*s, name, key, window_, config_.nonce_bits);
    if (v != Verdict::kAccept) return from_verdict(v);
    return Verified{s->crsd.identity()};
  } catch (const DecryptFailure&) {
    return RejectReason::kDecryptFailure;
  } catch (const UnknownKey&) {
    return RejectReason::kUnknownKey;
  } catch (const MalformedMessage&) {
    return RejectReason::kMalformed;
  } catch (const FieldError&) {
    return RejectReason::kMalformed;
  }
}

std::optional<bool> Producer::record_distinct(std::string_view blob, const Name& name,
                                              Tick clock) {
  const auto token = decode_distinct_token(blob);
  if (!token) return std::nullopt;
  auto& counter = ledger_.distinct[name];
  const bool fresh =
      counter.seen.emplace(token->nonce, token->timestamp / config_.dedup_window).second;
  if (fresh) {
    ++counter.accepted;
    if (ledger_.requests_log) ledger_.requests_log->push_back({name, to_hex(token->nonce), clock});
  } else {
    ++counter.duplicates;
  }
  return fresh;
}

IngestReport Producer::ingest_pint(const PInt& pint, Tick clock) {
  window_.advance(clock);
  IngestReport report;
  const Name& name = pint.name();
  const AcctFlag policy = serves(name) ? acct_for(name) : AcctFlag::kNone;
  if (policy == AcctFlag::kNone) {
    ++ledger_.ignored;
    report.ignored = 1;
    return report;
  }
  if (pint.type() != policy) {
    reject(pint.origin(), name, RejectReason::kTypeMismatch, clock, report);
    return report;
  }

  switch (policy) {
    case AcctFlag::kAggregate:
      ledger_.aggregate[name].total += pint.count();
      report.accepted = pint.count();
      break;
    case AcctFlag::kDistinct:
      ledger_.aggregate[name].total += pint.count();
      for (const auto& blob : pint.cdata()) {
        const auto fresh = record_distinct(blob, name, clock);
        if (!fresh) {
          reject(pint.origin(), name,
                 blob.empty() ? RejectReason::kMissingCrsd : RejectReason::kMalformed, clock, report);
        } else if (*fresh) {
          ++report.accepted;
        } else {
          ++report.duplicates;
        }
      }
      break;
    case AcctFlag::kIndividual:
      for (const auto& blob : pint.cdata()) {
        auto result = verify_blob(blob, name);
        if (auto* reason = std::get_if<RejectReason>(&result)) {
          reject(pint.origin(), name, *reason, clock, report);
          continue;
        }
        const auto& consumer = std::get<Verified>(result).consumer;
        ++ledger_.individual[{consumer, name}];
        ++ledger_.aggregate[name].total;
        if (ledger_.requests_log) ledger_.requests_log->push_back({name, consumer, clock});
        ++report.accepted;
      }
      break;
    case AcctFlag::kNone:
      break;
  }
  return report;
}

ContentObject Producer::make_content(const Name& name, AcctFlag acct) const {
  const Tick expiry =
      acct == AcctFlag::kIndividual && config_.zero_cache_individual ? 0 : config_.expiry;
  return ContentObject(name, payload_, acct, expiry);
}

Bytes Producer::requirements(const Name& name) const {
  std::string key = "-";
  if (config_.keys && config_.keys->has_producer_for(name)) {
    key = config_.keys->producer_prefix(name).to_uri();
  }
  return fmt::format("form={};mode={};tag={};nonce_bits={};key={}", to_string(config_.crsd_form),
                     to_string(config_.crsd_mode), to_string(config_.tag_scheme),
                     config_.nonce_bits, key);
}

std::variant<ContentObject, Nack> Producer::ingest_interest(const Interest& interest, Tick clock) {
  window_.advance(clock);
  const Name& name = interest.name();
  if (!serves(name)) {
    throw FieldError(fmt::format("{} is outside producer prefix {}", name.to_uri(),
                                 config_.prefix.to_uri()));
  }
  if (auto content = key_target(name)) {
    ++ledger_.key_requests[*content];
    // keys are per request and never cached
    return ContentObject(name, Bytes(32, 'k'), AcctFlag::kNone, 0);
  }

  const AcctFlag policy = acct_for(name);
  IngestReport report;
  switch (policy) {
    case AcctFlag::kNone:
      break;
    case AcctFlag::kAggregate: {
      auto& counter = ledger_.aggregate[name];
      ++counter.total;
      ++counter.direct;
      break;
    }
    case AcctFlag::kDistinct: {
      auto& counter = ledger_.aggregate[name];
      ++counter.total;
      ++counter.direct;
      if (!record_distinct(interest.payload(), name, clock)) {
        reject({}, name,
               interest.has_payload() ? RejectReason::kMalformed : RejectReason::kMissingCrsd, clock,
               report);
      }
      break;
    }
    case AcctFlag::kIndividual: {
      if (!interest.has_payload()) {
        return Nack(name, NackReason::kMissingCrsd, requirements(name));
      }
      auto result = verify_blob(interest.payload(), name);
      if (auto* reason = std::get_if<RejectReason>(&result)) {
        reject({}, name, *reason, clock, report);
        return Nack(name, NackReason::kBadCrsd, requirements(name));
      }
      const auto& consumer = std::get<Verified>(result).consumer;
      ++ledger_.individual[{consumer, name}];
      auto& counter = ledger_.aggregate[name];
      ++counter.total;
      ++counter.direct;
      if (ledger_.requests_log) ledger_.requests_log->push_back({name, consumer, clock});
      break;
    }
  }
  return make_content(name, policy);
}

std::vector<LedgerRow> Producer::query(AcctFlag kind, const LedgerSelector& sel) const {
  std::vector<LedgerRow> rows;
  switch (kind) {
    case AcctFlag::kAggregate: {
      std::set<Name> names;
      for (const auto& [name, c] : ledger_.aggregate) names.insert(name);
      for (const auto& [name, n] : ledger_.rejections_by_name) names.insert(name);
      for (const auto& name : names) {
        if (!selected(sel, name, nullptr)) continue;
        LedgerRow row{name, kind, {}, 0, 0, 0};
        if (auto it = ledger_.aggregate.find(name); it != ledger_.aggregate.end()) {
          row.count = it->second.total;
        }
        if (auto it = ledger_.rejections_by_name.find(name); it != ledger_.rejections_by_name.end()) {
          row.rejections = it->second;
        }
        rows.push_back(std::move(row));
      }
      break;
    }
    case AcctFlag::kDistinct:
      for (const auto& [name, c] : ledger_.distinct) {
        if (selected(sel, name, nullptr)) rows.push_back({name, kind, {}, c.accepted, c.duplicates, 0});
      }
      break;
    case AcctFlag::kIndividual:
      for (const auto& [key, n] : ledger_.individual) {
        if (selected(sel, key.second, &key.first)) rows.push_back({key.second, kind, key.first, n, 0, 0});
      }
      break;
    case AcctFlag::kNone:
      break;
  }
  return rows;
}

std::uint64_t Producer::total(AcctFlag kind, const LedgerSelector& sel) const {
  std::uint64_t sum = 0;
  for (const auto& row : query(kind, sel)) sum += row.count;
  return sum;
}

void Producer::write_csv(std::ostream& out) const {
  out << "name,type,consumer,count,duplicates,rejections\n";
  for (auto kind : {AcctFlag::kAggregate, AcctFlag::kDistinct, AcctFlag::kIndividual}) {
    for (const auto& row : query(kind)) {
      out << fmt::format("{},{},{},{},{},{}\n", csv_field(row.name.to_uri()), to_string(row.type),
                         csv_field(row.consumer), row.count, row.duplicates, row.rejections);
    }
  }
}

}  // namespace ccnacct
