#include "ccnacct/core/message.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

std::string_view to_string(AcctFlag flag) {
  switch (flag) {
    case AcctFlag::kNone: return "NONE";
    case AcctFlag::kAggregate: return "AGGREGATE";
    case AcctFlag::kDistinct: return "DISTINCT";
    case AcctFlag::kIndividual: return "INDIVIDUAL";
  }
  return "?";
}

AcctFlag parse_acct_flag(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "none") return AcctFlag::kNone;
  if (lower == "aggregate") return AcctFlag::kAggregate;
  if (lower == "distinct") return AcctFlag::kDistinct;
  if (lower == "individual") return AcctFlag::kIndividual;
  throw FieldError(fmt::format("unknown accounting flag '{}'", text));
}

std::string_view to_string(MessageType type) {
  switch (type) {
    case MessageType::kInterest: return "interest";
    case MessageType::kContent: return "content";
    case MessageType::kPInt: return "pint";
    case MessageType::kNack: return "nack";
  }
  return "?";
}

std::string_view to_string(NackReason reason) {
  switch (reason) {
    case NackReason::kMissingCrsd: return "MISSING_CRSD";
    case NackReason::kBadCrsd: return "BAD_CRSD";
  }
  return "?";
}

namespace {

void check_blob(std::string_view what, std::size_t size, std::size_t limit) {
  if (size > limit) throw OversizeField(fmt::format("{} of {} bytes (max {})", what, size, limit));
}

}  // namespace

Interest::Interest(Name name, Bytes payload) : name_(std::move(name)), payload_(std::move(payload)) {
  check_blob("interest payload", payload_.size(), kMaxInterestPayload);
}

ContentObject::ContentObject(Name name, Bytes payload, AcctFlag acct, Tick expiry_time,
                             Bytes validation)
    : ContentObject(std::move(name), std::make_shared<const Bytes>(std::move(payload)), acct,
                    expiry_time, std::move(validation)) {}

ContentObject::ContentObject(Name name, std::shared_ptr<const Bytes> payload, AcctFlag acct,
                             Tick expiry_time, Bytes validation)
    : name_(std::move(name)),
      payload_(payload ? std::move(payload) : std::make_shared<const Bytes>()),
      acct_(acct),
      expiry_time_(expiry_time),
      validation_(std::move(validation)) {
  if (static_cast<std::uint8_t>(acct_) > 3) throw FieldError("content acct flag out of range");
  check_blob("content payload", payload_->size(), kMaxContentPayload);
  check_blob("content validation", validation_.size(), kMaxBlob);
}

bool operator==(const ContentObject& a, const ContentObject& b) {
  return a.name_ == b.name_ && a.acct_ == b.acct_ && a.expiry_time_ == b.expiry_time_ &&
         a.validation_ == b.validation_ && *a.payload_ == *b.payload_;
}

PInt::PInt(Name name, AcctFlag type, Bytes origin, std::uint32_t count, std::vector<Bytes> cdata)
    : name_(std::move(name)),
      type_(type),
      origin_(std::move(origin)),
      count_(count),
      cdata_(std::move(cdata)) {
  if (type_ == AcctFlag::kNone || static_cast<std::uint8_t>(type_) > 3) {
    throw FieldError("pInt type must be AGGREGATE, DISTINCT or INDIVIDUAL");
  }
  if (count_ == 0) throw FieldError("pInt count must be at least 1");
  check_blob("pInt origin", origin_.size(), kMaxBlob);
  if (cdata_.size() > kMaxListLength) {
    throw OversizeField(fmt::format("pInt cdata has {} entries (max {})", cdata_.size(),
                                    kMaxListLength));
  }
  for (const auto& c : cdata_) check_blob("pInt cdata entry", c.size(), kMaxBlob);
  if (type_ != AcctFlag::kAggregate && cdata_.size() != count_) {
    throw FieldError(fmt::format("{} pInt needs one cdata entry per count ({} != {})",
                                 to_string(type_), cdata_.size(), count_));
  }
  if (type_ == AcctFlag::kAggregate && !cdata_.empty() && cdata_.size() != count_) {
    throw FieldError("AGGREGATE pInt cdata must be empty or match count");
  }
}

Nack::Nack(Name name, NackReason reason, Bytes requirements)
    : name_(std::move(name)), reason_(reason), requirements_(std::move(requirements)) {
  if (reason_ != NackReason::kMissingCrsd && reason_ != NackReason::kBadCrsd) {
    throw FieldError("nack reason out of range");
  }
  check_blob("nack requirements", requirements_.size(), kMaxBlob);
}

MessageType type_of(const Message& msg) {
  return static_cast<MessageType>(msg.index() + 1);
}

const Name& name_of(const Message& msg) {
  return std::visit([](const auto& m) -> const Name& { return m.name(); }, msg);
}

}  // namespace ccnacct
