#pragma once

#include <cstdint>

namespace ccnacct {

// Probability that `draws` independent uniform N-bit nonces contain at least
// one repeat: 1 - prod_{i<s} (2^N - i) / 2^N, evaluated in log space. Exactly
// 1 when draws exceeds 2^N, exactly 0 for draws <= 1.
double collision_probability(unsigned bits, std::uint64_t draws);

// The same product multiplied out term by term in extended precision.
// Intended for small spaces (bits <= 64) and modest draw counts; the CLI
// exposes it as the "exact" mode.
double collision_probability_direct(unsigned bits, std::uint64_t draws);

}  // namespace ccnacct
