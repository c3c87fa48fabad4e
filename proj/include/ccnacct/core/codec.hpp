#pragma once

#include <cstddef>
#include <string_view>

#include "ccnacct/core/bytes.hpp"
#include "ccnacct/core/message.hpp"

namespace ccnacct {

// Wire format (all integers big-endian):
//
//   message  := type:u8 body
//   name     := count:u16 { len:u16 component }
//   blob16   := len:u16 bytes
//   interest := 0x01 name blob16(payload)
//   content  := 0x02 name len:u32 payload blob16(acct:u8) blob16(expiry:u64)
//               blob16(validation)
//   pint     := 0x03 name blob16(type:u8) blob16(origin) blob16(count:u32)
//               count:u16 { blob16(cdata) }
//   nack     := 0x04 name blob16(reason:u8) blob16(requirements)
//
// docs/formats.md carries the same table with a worked example.

Bytes encode(const Message& msg);

// Exact size of encode(msg) without materializing it.
std::size_t encoded_size(const Message& msg);

// Decodes exactly one message occupying all of `bytes`. Throws
// MalformedMessage on truncation, trailing bytes, bad tags, wrong scalar
// widths or invariant violations.
Message decode(std::string_view bytes);

void encode_name(Bytes& out, const Name& name);
Name decode_name(ByteReader& in);

}  // namespace ccnacct
