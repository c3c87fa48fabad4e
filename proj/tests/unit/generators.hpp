#pragma once

// Seeded random value generators shared by the property-style tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ccnacct/core/message.hpp"

namespace ccnacct::testing {

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> byte(0, 255);
  Bytes out(len(rng), '\0');
  for (auto& c : out) c = static_cast<char>(byte(rng));
  return out;
}

// Small alphabet so that random names share prefixes often.
inline Name random_name(std::mt19937_64& rng, std::size_t max_depth = 6, int alphabet = 3) {
  std::uniform_int_distribution<std::size_t> depth(0, max_depth);
  std::uniform_int_distribution<int> letter(0, alphabet - 1);
  std::vector<Bytes> parts;
  const auto n = depth(rng);
  for (std::size_t i = 0; i < n; ++i) parts.emplace_back(1, static_cast<char>('a' + letter(rng)));
  return Name(std::move(parts));
}

inline Name random_wide_name(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> depth(0, 8);
  std::vector<Bytes> parts;
  const auto n = depth(rng);
  for (std::size_t i = 0; i < n; ++i) parts.push_back(random_bytes(rng, 1, 40));
  return Name(std::move(parts));
}

inline AcctFlag random_pint_type(std::mt19937_64& rng) {
  return static_cast<AcctFlag>(std::uniform_int_distribution<int>(1, 3)(rng));
}

inline Message random_message(std::mt19937_64& rng) {
  const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
  switch (kind) {
    case 0:
      return Interest(random_wide_name(rng), random_bytes(rng, 0, 64));
    case 1:
      return ContentObject(random_wide_name(rng), random_bytes(rng, 0, 512),
                           static_cast<AcctFlag>(std::uniform_int_distribution<int>(0, 3)(rng)),
                           std::uniform_int_distribution<Tick>(0, 1'000'000)(rng),
                           random_bytes(rng, 0, 32));
    case 2: {
      const AcctFlag type = random_pint_type(rng);
      const auto count = std::uniform_int_distribution<std::uint32_t>(1, 6)(rng);
      std::vector<Bytes> cdata;
      if (type != AcctFlag::kAggregate) {
        for (std::uint32_t i = 0; i < count; ++i) cdata.push_back(random_bytes(rng, 0, 48));
      }
      return PInt(random_wide_name(rng), type, random_bytes(rng, 0, 32), count, std::move(cdata));
    }
    default:
      return Nack(random_wide_name(rng),
                  std::uniform_int_distribution<int>(0, 1)(rng) ? NackReason::kMissingCrsd
                                                                 : NackReason::kBadCrsd,
                  random_bytes(rng, 0, 40));
  }
}

}  // namespace ccnacct::testing
