#include "ccnacct/crsd/collision.hpp"

#include <algorithm>
#include <cmath>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

// Past this many draws the sum of log terms switches to Euler-Maclaurin.
constexpr std::uint64_t kDirectLimit = std::uint64_t{1} << 20;
// 2^-16000 * s^2 is far below the smallest double for any 64-bit s.
constexpr unsigned kNegligibleBits = 16000;

// Integral of log(1 - u) from 0 to a, i.e. -(1 - a) log(1 - a) - a.
long double log_integral(long double a) {
  if (a < 1e-3L) {
    long double sum = 0.0L;
    long double power = a;
    for (int k = 2; k < 16; ++k) {
      power *= a;
      sum += power / (static_cast<long double>(k) * (k - 1));
    }
    return -sum;
  }
  return -(1.0L - a) * std::log1p(-a) - a;
}

// log prod_{i=1}^{m} (1 - i / D)
long double log_no_collision(long double space, std::uint64_t m) {
  if (m <= kDirectLimit) {
    long double sum = 0.0L;
    for (std::uint64_t i = 1; i <= m; ++i) sum += std::log1p(-static_cast<long double>(i) / space);
    return sum;
  }
  // sum_{i=0}^{m} f(i) with f(x) = log(1 - x/D), f(0) = 0.
  const auto mm = static_cast<long double>(m);
  const long double rest = space - mm;
  const long double integral = space * log_integral(mm / space);
  const long double ends = std::log1p(-mm / space) / 2.0L;
  const long double d1 = -1.0L / rest + 1.0L / space;
  const long double d3 = -2.0L / (rest * rest * rest) + 2.0L / (space * space * space);
  return integral + ends + d1 / 12.0L - d3 / 720.0L;
}

bool exceeds_space(unsigned bits, std::uint64_t draws) {
  return bits < 64 && draws > (std::uint64_t{1} << bits);
}

}  // namespace

double collision_probability(unsigned bits, std::uint64_t draws) {
  if (bits == 0) throw FieldError("nonce width must be positive");
  if (draws <= 1) return 0.0;
  if (exceeds_space(bits, draws)) return 1.0;
  if (bits > kNegligibleBits) return 0.0;
  const long double space = std::ldexp(1.0L, static_cast<int>(bits));
  const long double log_p = log_no_collision(space, draws - 1);
  return std::clamp(static_cast<double>(-std::expm1(log_p)), 0.0, 1.0);
}

double collision_probability_direct(unsigned bits, std::uint64_t draws) {
  if (bits == 0) throw FieldError("nonce width must be positive");
  if (bits > 64) throw FieldError("exact mode supports at most 64 bits");
  if (draws <= 1) return 0.0;
  if (exceeds_space(bits, draws)) return 1.0;
  const long double space = std::ldexp(1.0L, static_cast<int>(bits));
  long double p = 1.0L;
  for (std::uint64_t i = 1; i < draws && p > 0.0L; ++i) {
    p *= (space - static_cast<long double>(i)) / space;
  }
  return std::clamp(static_cast<double>(1.0L - p), 0.0, 1.0);
}

}  // namespace ccnacct
