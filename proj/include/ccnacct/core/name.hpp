#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ccnacct/core/bytes.hpp"

namespace ccnacct {

// Hierarchical content name. Components are raw bytes and comparison is
// exact, component by component. The empty name is the root prefix "/".
class Name {
 public:
  static constexpr std::size_t kMaxComponents = 32;
  static constexpr std::size_t kMaxComponentSize = 255;
  static constexpr std::size_t kMaxEncodedSize = 8192;

  Name() = default;
  explicit Name(std::vector<Bytes> components);

  // Accepts "lci:/a/b", "/a/b" or "/". Components may use %XX escapes.
  static Name parse(std::string_view uri);

  const std::vector<Bytes>& components() const { return components_; }
  const Bytes& operator[](std::size_t i) const { return components_[i]; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }

  Name prefix(std::size_t n) const;
  Name append(Bytes component) const;
  bool is_prefix_of(const Name& other) const;

  // "/a/b" with bytes outside [A-Za-z0-9-._~] percent-escaped.
  std::string to_uri() const;

  // Size of the name field on the wire: 2-byte count plus 2-byte length
  // and body per component.
  std::size_t encoded_size() const;

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;

 private:
  std::vector<Bytes> components_;
};

struct NameHash {
  std::size_t operator()(const Name& name) const noexcept;
};

}  // namespace ccnacct
