#include "tes/bitstring.hpp"

#include <algorithm>

#include "tes/error.hpp"

namespace tes {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
  BitString s;
  s.bytes_.assign(bytes.begin(), bytes.end());
  s.bits_ = bytes.size() * 8;
  return s;
}

BitString BitString::from_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw Error(Errc::bad_length, "bit count exceeds supplied bytes");
  }
  BitString s;
  s.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>((bit_count + 7) / 8));
  s.bits_ = bit_count;
  if (bit_count % 8 != 0) {
    s.bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - bit_count % 8));
  }
  return s;
}

BitString BitString::zeros(std::size_t bit_count) {
  BitString s;
  s.bytes_.assign((bit_count + 7) / 8, 0);
  s.bits_ = bit_count;
  return s;
}

BitString BitString::from_block(const Block& block, std::size_t bit_count) {
  if (bit_count > 128) throw Error(Errc::bad_length, "block holds at most 128 bits");
  return from_bits(block, bit_count);
}

BitString BitString::from_hex(std::string_view hex) {
  return from_bytes(bytes_from_hex(hex));
}

BitString BitString::from_binary(std::string_view bits) {
  BitString s;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(Errc::parse_error, "binary literal must be 0/1");
    s.push_back(c == '1');
  }
  return s;
}

void BitString::set_bit(std::size_t i, bool v) {
  const auto mask = static_cast<std::uint8_t>(0x80 >> (i & 7));
  if (v) {
    bytes_[i >> 3] |= mask;
  } else {
    bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
  }
}

void BitString::push_back(bool v) {
  if (bits_ % 8 == 0) bytes_.push_back(0);
  ++bits_;
  if (v) set_bit(bits_ - 1, true);
}

void BitString::append(const BitString& other) {
  if (bits_ % 8 == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    bits_ += other.bits_;
    return;
  }
  for (std::size_t i = 0; i < other.bits_; ++i) push_back(other.bit(i));
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
  if (pos > bits_ || len > bits_ - pos) throw Error(Errc::bad_length, "substring out of range");
  if (pos % 8 == 0) {
    return from_bits(std::span(bytes_).subspan(pos / 8), len);
  }
  BitString s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(bit(pos + i));
  return s;
}

Block BitString::block_at(std::size_t pos) const {
  Block b{};
  if (pos >= bits_) return b;
  const std::size_t len = std::min<std::size_t>(128, bits_ - pos);
  if (pos % 8 == 0) {
    std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(pos / 8), (len + 7) / 8, b.begin());
    // Trailing bits past the end are already zero by the class invariant.
    return b;
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (bit(pos + i)) b[i >> 3] |= static_cast<std::uint8_t>(0x80 >> (i & 7));
  }
  return b;
}

std::string BitString::to_hex() const { return hex_from_bytes(bytes_); }

std::string BitString::to_binary() const {
  std::string out;
  out.reserve(bits_);
  for (std::size_t i = 0; i < bits_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

BitString concat(const BitString& a, const BitString& b) {
  BitString out = a;
  out.append(b);
  return out;
}

std::vector<std::uint8_t> bytes_from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(Errc::parse_error, "hex string has odd length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::parse_error, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

std::string hex_from_bytes(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

}  // namespace tes
