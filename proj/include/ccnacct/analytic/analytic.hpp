#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ccnacct/core/name.hpp"

namespace ccnacct {

// Accounting schemes compared on a single consumer-to-producer path.
enum class Scheme : std::uint8_t { kEncryption, kPint, kCacheless };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

// One-direction message counts on the R1..Rc segment (p_l) and the Rc..P
// segment (p_r) for gamma requests entering R1.
struct SchemeCounts {
  std::uint64_t p_l = 0;
  std::uint64_t p_r = 0;
  std::uint64_t gamma = 0;

  friend bool operator==(const SchemeCounts&, const SchemeCounts&) = default;
};

SchemeCounts message_counts(Scheme scheme, std::uint64_t gamma);

inline constexpr std::size_t kDefaultNameBytes = 40;

// A single-component name whose encoded field is exactly `encoded_bytes`
// long (count + length + body). Valid for 5..259 bytes.
Name make_fixed_length_name(std::size_t encoded_bytes);

// Wire sizes from the codec: an AGGREGATE pInt with empty origin, and a
// content object with the given payload.
std::size_t pint_wire_size(std::size_t name_bytes = kDefaultNameBytes);
std::size_t content_wire_size(std::size_t payload_bytes, std::size_t name_bytes = kDefaultNameBytes);

// Bytes of pInt per byte of content on link `link_index` (1 = consumer
// link). Links up to and including the one that reaches the caching router
// carry no pInt.
double overhead_ratio(std::size_t payload_bytes, std::size_t name_bytes, std::size_t link_index,
                      std::size_t cache_link_index, std::size_t total_links);

struct LinkOverhead {
  std::size_t link;
  double ratio;
  std::uint64_t extra_bytes;  // pInt bytes carried per satisfied request
};

std::vector<LinkOverhead> overhead_profile(std::size_t payload_bytes, std::size_t name_bytes,
                                           std::size_t total_links, std::size_t cache_link_index = 1);

std::uint64_t total_extra_bytes(std::size_t payload_bytes, std::size_t name_bytes,
                                std::size_t total_links, std::size_t cache_link_index = 1);

}  // namespace ccnacct
