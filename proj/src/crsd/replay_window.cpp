#include "ccnacct/crsd/replay_window.hpp"

#include <algorithm>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

ReplayWindow::ReplayWindow(Tick width) : ReplayWindow(width, width) {}

ReplayWindow::ReplayWindow(Tick width, Tick skew) : width_(width), skew_(skew) {
  if (width_ == 0) throw ConfigError("replay window width must be positive");
}

void ReplayWindow::advance(Tick now) {
  clock_ = std::max(clock_, now);
  const Tick lowest = clock_ >= width_ ? clock_ - width_ : 0;
  while (!buckets_.empty()) {
    const auto first = buckets_.begin()->first;
    if ((first + 1) * width_ > lowest) break;
    buckets_.erase(buckets_.begin());
  }
}

bool ReplayWindow::fresh(Tick timestamp) const {
  return timestamp + width_ >= clock_ && timestamp <= clock_ + skew_;
}

bool ReplayWindow::seen(const Bytes& nonce) const {
  return std::any_of(buckets_.begin(), buckets_.end(),
                     [&](const auto& bucket) { return bucket.second.contains(nonce); });
}

void ReplayWindow::record(const Bytes& nonce, Tick timestamp) {
  buckets_[timestamp / width_].insert(nonce);
}

std::size_t ReplayWindow::size() const {
  std::size_t n = 0;
  for (const auto& [index, set] : buckets_) n += set.size();
  return n;
}

}  // namespace ccnacct
