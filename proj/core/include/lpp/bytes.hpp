#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lpp {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

Bytes to_bytes(std::string_view s);
std::string to_string(BytesView b);

std::string to_hex(BytesView b);
Bytes from_hex(std::string_view hex);

// big-endian append / read helpers for the wire format
void put_u8(Bytes& out, std::uint8_t v);
void put_u16(Bytes& out, std::uint16_t v);
void put_u32(Bytes& out, std::uint32_t v);

// A cursor over an immutable buffer; read_* throw ParseError past the end.
class ByteReader {
 public:
  explicit ByteReader(BytesView data) : data_(data) {}

  std::uint8_t read_u8();
  std::uint16_t read_u16();
  std::uint32_t read_u32();
  BytesView read_bytes(std::size_t n);
  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  BytesView data_;
  std::size_t pos_ = 0;
};

}  // namespace lpp
