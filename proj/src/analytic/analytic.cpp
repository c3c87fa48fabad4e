#include "ccnacct/analytic/analytic.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include <fmt/format.h>

#include "ccnacct/core/codec.hpp"
#include "ccnacct/core/errors.hpp"

namespace ccnacct {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kEncryption: return "ENCRYPTION";
    case Scheme::kPint: return "PINT";
    case Scheme::kCacheless: return "CACHELESS";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (t == "ENCRYPTION") return Scheme::kEncryption;
  if (t == "PINT") return Scheme::kPint;
  if (t == "CACHELESS") return Scheme::kCacheless;
  throw FieldError(fmt::format("unknown scheme '{}'", text));
}

SchemeCounts message_counts(Scheme scheme, std::uint64_t gamma) {
  switch (scheme) {
    // interest + content, then key interest + key content; only the key
    // exchange goes past the cache
    case Scheme::kEncryption: return {4 * gamma, 2 * gamma, gamma};
    // interest + content below the cache, one pInt above it
    case Scheme::kPint: return {2 * gamma, gamma, gamma};
    case Scheme::kCacheless: return {2 * gamma, 2 * gamma, gamma};
  }
  return {0, 0, gamma};
}

Name make_fixed_length_name(std::size_t encoded_bytes) {
  if (encoded_bytes < 5 || encoded_bytes > 4 + Name::kMaxComponentSize) {
    throw FieldError(fmt::format("name field of {} bytes is not representable", encoded_bytes));
  }
  return Name({Bytes(encoded_bytes - 4, 'n')});
}

std::size_t pint_wire_size(std::size_t name_bytes) {
  return encoded_size(Message{PInt(make_fixed_length_name(name_bytes), AcctFlag::kAggregate, {}, 1)});
}

std::size_t content_wire_size(std::size_t payload_bytes, std::size_t name_bytes) {
  // the codec sizes content arithmetically, so the payload buffer is never walked
  auto payload = std::make_shared<const Bytes>(payload_bytes, '\0');
  return encoded_size(Message{ContentObject(make_fixed_length_name(name_bytes), std::move(payload),
                                            AcctFlag::kAggregate, 1)});
}

double overhead_ratio(std::size_t payload_bytes, std::size_t name_bytes, std::size_t link_index,
                      std::size_t cache_link_index, std::size_t total_links) {
  if (link_index < 1 || link_index > total_links) {
    throw FieldError(fmt::format("link {} outside 1..{}", link_index, total_links));
  }
  if (link_index <= cache_link_index) return 0.0;
  return static_cast<double>(pint_wire_size(name_bytes)) /
         static_cast<double>(content_wire_size(payload_bytes, name_bytes));
}

std::vector<LinkOverhead> overhead_profile(std::size_t payload_bytes, std::size_t name_bytes,
                                           std::size_t total_links, std::size_t cache_link_index) {
  std::vector<LinkOverhead> out;
  const std::uint64_t pint = pint_wire_size(name_bytes);
  for (std::size_t link = 1; link <= total_links; ++link) {
    const double ratio = overhead_ratio(payload_bytes, name_bytes, link, cache_link_index, total_links);
    out.push_back({link, ratio, link <= cache_link_index ? 0 : pint});
  }
  return out;
}

std::uint64_t total_extra_bytes(std::size_t payload_bytes, std::size_t name_bytes,
                                std::size_t total_links, std::size_t cache_link_index) {
  std::uint64_t sum = 0;
  for (const auto& l : overhead_profile(payload_bytes, name_bytes, total_links, cache_link_index)) {
    sum += l.extra_bytes;
  }
  return sum;
}

}  // namespace ccnacct
