#include "ccnacct/core/codec.hpp"

#include <fmt/format.h>

#include "ccnacct/core/errors.hpp"

namespace ccnacct {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void put_blob16(Bytes& out, std::string_view blob) {
  put_u16(out, static_cast<std::uint16_t>(blob.size()));
  out.append(blob);
}

void put_scalar8(Bytes& out, std::uint8_t v) {
  put_u16(out, 1);
  out.push_back(static_cast<char>(v));
}

std::uint8_t read_scalar8(ByteReader& in) {
  if (in.u16() != 1) throw MalformedMessage("1-byte scalar field has wrong length");
  return in.u8();
}

std::uint32_t read_scalar32(ByteReader& in) {
  if (in.u16() != 4) throw MalformedMessage("4-byte scalar field has wrong length");
  return in.u32();
}

std::uint64_t read_scalar64(ByteReader& in) {
  if (in.u16() != 8) throw MalformedMessage("8-byte scalar field has wrong length");
  return in.u64();
}

AcctFlag read_acct(ByteReader& in) {
  const auto v = read_scalar8(in);
  if (v > 3) throw MalformedMessage(fmt::format("acct flag {} out of range", v));
  return static_cast<AcctFlag>(v);
}

Message decode_body(ByteReader& in) {
  const auto tag = in.u8();
  switch (tag) {
    case 0x01: {
      Name name = decode_name(in);
      Bytes payload(in.blob16());
      return Interest(std::move(name), std::move(payload));
    }
    case 0x02: {
      Name name = decode_name(in);
      Bytes payload(in.blob32());
      const AcctFlag acct = read_acct(in);
      const Tick expiry = read_scalar64(in);
      Bytes validation(in.blob16());
      return ContentObject(std::move(name), std::move(payload), acct, expiry, std::move(validation));
    }
    case 0x03: {
      Name name = decode_name(in);
      const AcctFlag type = read_acct(in);
      Bytes origin(in.blob16());
      const std::uint32_t count = read_scalar32(in);
      const std::uint16_t entries = in.u16();
      std::vector<Bytes> cdata;
      cdata.reserve(entries);
      for (std::uint16_t i = 0; i < entries; ++i) cdata.emplace_back(in.blob16());
      return PInt(std::move(name), type, std::move(origin), count, std::move(cdata));
    }
    case 0x04: {
      Name name = decode_name(in);
      const auto reason = read_scalar8(in);
      Bytes requirements(in.blob16());
      return Nack(std::move(name), static_cast<NackReason>(reason), std::move(requirements));
    }
    default:
      throw MalformedMessage(fmt::format("unknown message type 0x{:02x}", tag));
  }
}

}  // namespace

void encode_name(Bytes& out, const Name& name) {
  put_u16(out, static_cast<std::uint16_t>(name.size()));
  for (const auto& c : name.components()) put_blob16(out, c);
}

Name decode_name(ByteReader& in) {
  const auto count = in.u16();
  if (count > Name::kMaxComponents) {
    throw MalformedMessage(fmt::format("name has {} components", count));
  }
  std::vector<Bytes> parts;
  parts.reserve(count);
  for (std::uint16_t i = 0; i < count; ++i) parts.emplace_back(in.blob16());
  try {
    return Name(std::move(parts));
  } catch (const FieldError& e) {
    throw MalformedMessage(e.what());
  }
}

Bytes encode(const Message& msg) {
  Bytes out;
  out.reserve(encoded_size(msg));
  out.push_back(static_cast<char>(type_of(msg)));
  std::visit(Overloaded{
                 [&](const Interest& m) {
                   encode_name(out, m.name());
                   put_blob16(out, m.payload());
                 },
                 [&](const ContentObject& m) {
                   encode_name(out, m.name());
                   put_u32(out, static_cast<std::uint32_t>(m.payload().size()));
                   out.append(m.payload());
                   put_scalar8(out, static_cast<std::uint8_t>(m.acct()));
                   put_u16(out, 8);
                   put_u64(out, m.expiry_time());
                   put_blob16(out, m.validation());
                 },
                 [&](const PInt& m) {
                   encode_name(out, m.name());
                   put_scalar8(out, static_cast<std::uint8_t>(m.type()));
                   put_blob16(out, m.origin());
                   put_u16(out, 4);
                   put_u32(out, m.count());
                   put_u16(out, static_cast<std::uint16_t>(m.cdata().size()));
                   for (const auto& c : m.cdata()) put_blob16(out, c);
                 },
                 [&](const Nack& m) {
                   encode_name(out, m.name());
                   put_scalar8(out, static_cast<std::uint8_t>(m.reason()));
                   put_blob16(out, m.requirements());
                 },
             },
             msg);
  return out;
}

std::size_t encoded_size(const Message& msg) {
  return 1 + std::visit(Overloaded{
                            [](const Interest& m) -> std::size_t {
                              return m.name().encoded_size() + 2 + m.payload().size();
                            },
                            [](const ContentObject& m) -> std::size_t {
                              return m.name().encoded_size() + 4 + m.payload().size() + 3 + 10 +
                                     2 + m.validation().size();
                            },
                            [](const PInt& m) -> std::size_t {
                              std::size_t n = m.name().encoded_size() + 3 + 2 + m.origin().size() +
                                              6 + 2;
                              for (const auto& c : m.cdata()) n += 2 + c.size();
                              return n;
                            },
                            [](const Nack& m) -> std::size_t {
                              return m.name().encoded_size() + 3 + 2 + m.requirements().size();
                            },
                        },
                        msg);
}

Message decode(std::string_view bytes) {
  if (bytes.empty()) throw MalformedMessage("empty input");
  ByteReader in(bytes);
  try {
    Message msg = decode_body(in);
    if (!in.done()) {
      throw MalformedMessage(fmt::format("{} trailing bytes after message", in.remaining()));
    }
    return msg;
  } catch (const FieldError& e) {
    throw MalformedMessage(e.what());
  }
}

}  // namespace ccnacct
