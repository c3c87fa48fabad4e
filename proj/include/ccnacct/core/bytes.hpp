#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ccnacct {

// Raw octet string. Components, payloads and blobs are all carried this way.
using Bytes = std::string;

// Simulation time. One tick is nominally one millisecond.
using Tick = std::uint64_t;

std::string to_hex(std::string_view bytes);

// Throws FieldError on odd length or a non-hex digit.
Bytes from_hex(std::string_view hex);

// Big-endian helpers shared by the codecs.
void put_u16(Bytes& out, std::uint16_t v);
void put_u32(Bytes& out, std::uint32_t v);
void put_u64(Bytes& out, std::uint64_t v);

// Bounds-checked big-endian reader. Every failure throws MalformedMessage.
class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  std::string_view take(std::size_t n);

  // 2-byte length followed by that many bytes.
  std::string_view blob16();
  std::string_view blob32();

  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace ccnacct
