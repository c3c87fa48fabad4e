#include "ccnacct/core/name.hpp"

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

bool unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '-' || c == '.' || c == '_' || c == '~';
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

Bytes unescape(std::string_view text) {
  Bytes out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out.push_back(text[i]);
      continue;
    }
    if (i + 2 >= text.size()) {
      throw FieldError(fmt::format("truncated escape in name component '{}'", text));
    }
    const int hi = hex_digit(text[i + 1]);
    const int lo = hex_digit(text[i + 2]);
    if (hi < 0 || lo < 0) throw FieldError(fmt::format("bad escape in name component '{}'", text));
    out.push_back(static_cast<char>((hi << 4) | lo));
    i += 2;
  }
  return out;
}

}  // namespace

Name::Name(std::vector<Bytes> components) : components_(std::move(components)) {
  if (components_.size() > kMaxComponents) {
    throw OversizeField(fmt::format("name has {} components (max {})", components_.size(),
                                    kMaxComponents));
  }
  for (const auto& c : components_) {
    if (c.empty()) throw FieldError("name component is empty");
    if (c.size() > kMaxComponentSize) {
      throw OversizeField(fmt::format("name component of {} bytes (max {})", c.size(),
                                      kMaxComponentSize));
    }
  }
  if (encoded_size() > kMaxEncodedSize) {
    throw OversizeField(fmt::format("name encodes to {} bytes (max {})", encoded_size(),
                                    kMaxEncodedSize));
  }
}

Name Name::parse(std::string_view uri) {
  if (uri.starts_with("lci:")) uri.remove_prefix(4);
  if (!uri.starts_with('/')) throw FieldError(fmt::format("name '{}' must start with '/'", uri));
  uri.remove_prefix(1);
  std::vector<Bytes> parts;
  if (uri.empty()) return Name{};
  while (true) {
    const auto slash = uri.find('/');
    const auto piece = uri.substr(0, slash);
    if (piece.empty()) throw FieldError("name has an empty component");
    parts.push_back(unescape(piece));
    if (slash == std::string_view::npos) break;
    uri.remove_prefix(slash + 1);
  }
  return Name(std::move(parts));
}

Name Name::prefix(std::size_t n) const {
  Name out;
  const auto end = std::min(n, components_.size());
  out.components_.assign(components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

Name Name::append(Bytes component) const {
  auto parts = components_;
  parts.push_back(std::move(component));
  return Name(std::move(parts));
}

bool Name::is_prefix_of(const Name& other) const {
  if (components_.size() > other.components_.size()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i] != other.components_[i]) return false;
  }
  return true;
}

std::string Name::to_uri() const {
  if (components_.empty()) return "/";
  std::string out;
  for (const auto& c : components_) {
    out.push_back('/');
    for (unsigned char ch : c) {
      if (unreserved(ch)) {
        out.push_back(static_cast<char>(ch));
      } else {
        out += fmt::format("%{:02X}", ch);
      }
    }
  }
  return out;
}

std::size_t Name::encoded_size() const {
  std::size_t n = 2;
  for (const auto& c : components_) n += 2 + c.size();
  return n;
}

std::size_t NameHash::operator()(const Name& name) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& c : name.components()) {
    h ^= std::hash<std::string_view>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace ccnacct
