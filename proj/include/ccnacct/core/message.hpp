#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "ccnacct/core/bytes.hpp"
#include "ccnacct/core/name.hpp"

namespace ccnacct {

// Accounting type requested by the producer in the content header.
enum class AcctFlag : std::uint8_t {
  kNone = 0,
  kAggregate = 1,
  kDistinct = 2,
  kIndividual = 3,
};

std::string_view to_string(AcctFlag flag);
// Case-insensitive: "none", "aggregate", "distinct", "individual".
AcctFlag parse_acct_flag(std::string_view text);

enum class MessageType : std::uint8_t {
  kInterest = 0x01,
  kContent = 0x02,
  kPInt = 0x03,
  kNack = 0x04,
};

std::string_view to_string(MessageType type);

// Field limits. Content payloads use a 4-byte length on the wire; every
// other variable-size field uses a 2-byte length.
inline constexpr std::size_t kMaxInterestPayload = 4096;
inline constexpr std::size_t kMaxBlob = 4096;
inline constexpr std::size_t kMaxContentPayload = std::size_t{16} << 20;
inline constexpr std::size_t kMaxListLength = 0xFFFF;

class Interest {
 public:
  // An empty payload means the interest carries no CrSD.
  explicit Interest(Name name, Bytes payload = {});

  const Name& name() const { return name_; }
  const Bytes& payload() const { return payload_; }
  bool has_payload() const { return !payload_.empty(); }

  friend bool operator==(const Interest&, const Interest&) = default;

 private:
  Name name_;
  Bytes payload_;
};

class ContentObject {
 public:
  // expiry_time is in ticks; 0 forbids caching.
  ContentObject(Name name, Bytes payload, AcctFlag acct, Tick expiry_time,
                Bytes validation = {});
  // Shares an immutable payload buffer between many objects.
  ContentObject(Name name, std::shared_ptr<const Bytes> payload, AcctFlag acct,
                Tick expiry_time, Bytes validation = {});

  const Name& name() const { return name_; }
  std::string_view payload() const { return *payload_; }
  const std::shared_ptr<const Bytes>& shared_payload() const { return payload_; }
  AcctFlag acct() const { return acct_; }
  Tick expiry_time() const { return expiry_time_; }
  bool cacheable() const { return expiry_time_ > 0; }
  const Bytes& validation() const { return validation_; }

  friend bool operator==(const ContentObject& a, const ContentObject& b);

 private:
  Name name_;
  std::shared_ptr<const Bytes> payload_;
  AcctFlag acct_;
  Tick expiry_time_;
  Bytes validation_;
};

// Push interest: stateless report of cache hits or collapsed interests.
class PInt {
 public:
  // AGGREGATE may carry empty cdata; DISTINCT and INDIVIDUAL need one cdata
  // entry per counted interest. count >= 1 and type != NONE.
  PInt(Name name, AcctFlag type, Bytes origin, std::uint32_t count,
       std::vector<Bytes> cdata = {});

  const Name& name() const { return name_; }
  AcctFlag type() const { return type_; }
  const Bytes& origin() const { return origin_; }
  std::uint32_t count() const { return count_; }
  const std::vector<Bytes>& cdata() const { return cdata_; }

  friend bool operator==(const PInt&, const PInt&) = default;

 private:
  Name name_;
  AcctFlag type_;
  Bytes origin_;
  std::uint32_t count_;
  std::vector<Bytes> cdata_;
};

enum class NackReason : std::uint8_t {
  kMissingCrsd = 1,
  kBadCrsd = 2,
};

std::string_view to_string(NackReason reason);

class Nack {
 public:
  Nack(Name name, NackReason reason, Bytes requirements);

  const Name& name() const { return name_; }
  NackReason reason() const { return reason_; }
  const Bytes& requirements() const { return requirements_; }

  friend bool operator==(const Nack&, const Nack&) = default;

 private:
  Name name_;
  NackReason reason_;
  Bytes requirements_;
};

using Message = std::variant<Interest, ContentObject, PInt, Nack>;

MessageType type_of(const Message& msg);
const Name& name_of(const Message& msg);

}  // namespace ccnacct
