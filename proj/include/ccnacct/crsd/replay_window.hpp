#pragma once

#include <cstdint>
#include <map>
#include <unordered_set>

#include "ccnacct/core/bytes.hpp"

namespace ccnacct {

inline constexpr Tick kDefaultReplayWindow = 300;

// Producer-side record of accepted nonces. A timestamp t is acceptable while
// clock - width <= t <= clock + skew. Nonces are kept in tumbling buckets of
// `width` ticks keyed by floor(t / width) and dropped once a whole bucket
// falls behind the acceptance range.
class ReplayWindow {
 public:
  explicit ReplayWindow(Tick width = kDefaultReplayWindow);
  ReplayWindow(Tick width, Tick skew);

  Tick width() const { return width_; }
  Tick skew() const { return skew_; }
  Tick clock() const { return clock_; }

  // Moves the clock forward and evicts stale buckets.
  void advance(Tick now);

  bool fresh(Tick timestamp) const;
  bool seen(const Bytes& nonce) const;
  void record(const Bytes& nonce, Tick timestamp);

  std::size_t size() const;

 private:
  Tick width_;
  Tick skew_;
  Tick clock_ = 0;
  std::map<std::uint64_t, std::unordered_set<Bytes>> buckets_;
};

}  // namespace ccnacct
