#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tes/field.hpp"

namespace tes {

/* A bit-granular string. Bit 0 is the most significant bit of byte 0; a
   partial final byte is left-aligned and its unused low bits are kept zero. */
class BitString {
 public:
  BitString() = default;

  static BitString from_bytes(std::span<const std::uint8_t> bytes);
  // Takes the first bit_count bits of bytes; throws Errc::bad_length if too few.
  static BitString from_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count);
  static BitString zeros(std::size_t bit_count);
  static BitString from_block(const Block& block, std::size_t bit_count = 128);
  // Even-length hex, whole bytes only.
  static BitString from_hex(std::string_view hex);
  // A literal such as "0110"; any other character is a parse error.
  static BitString from_binary(std::string_view bits);

  std::size_t size() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  std::span<const std::uint8_t> bytes() const { return bytes_; }

  bool bit(std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1; }
  void set_bit(std::size_t i, bool v);
  void push_back(bool v);
  void append(const BitString& other);
  // Bits [pos, pos + len); throws Errc::bad_length when out of range.
  BitString substr(std::size_t pos, std::size_t len) const;
  // 128 bits starting at pos, zero-filled past the end.
  Block block_at(std::size_t pos) const;

  std::string to_hex() const;
  std::string to_binary() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

BitString concat(const BitString& a, const BitString& b);

std::vector<std::uint8_t> bytes_from_hex(std::string_view hex);
std::string hex_from_bytes(std::span<const std::uint8_t> bytes);

}  // namespace tes
