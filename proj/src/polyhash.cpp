#include "tes/polyhash.hpp"

#include "tes/error.hpp"

namespace tes {

namespace {

// acc <- (acc + block) * h for every 128-bit block of s, the last one padded.
FieldElement horner_blocks(FieldElement acc, FieldElement h, const BitString& s) {
  for (std::size_t pos = 0; pos < s.size(); pos += 128) {
    acc = (acc ^ FieldElement::from_block(s.block_at(pos))) * h;
  }
  return acc;
}

}  // namespace

std::vector<BlockPiece> parse_n(const BitString& x) {
  if (x.empty()) throw Error(Errc::empty_string, "parse_n of the empty string");
  std::vector<BlockPiece> out;
  out.reserve((x.size() + 127) / 128);
  for (std::size_t pos = 0; pos < x.size(); pos += 128) {
    const std::size_t len = std::min<std::size_t>(128, x.size() - pos);
    out.push_back({x.block_at(pos), static_cast<unsigned>(len)});
  }
  return out;
}

Block pad(const BlockPiece& piece) {
  if (piece.bits < 1 || piece.bits > 128) {
    throw Error(Errc::bad_length, "pad expects 1..128 bits");
  }
  Block b = piece.data;
  // Clear anything past the piece so callers may pass unmasked data.
  const unsigned full = piece.bits / 8;
  if (full < 16) {
    b[full] &= static_cast<std::uint8_t>(0xFF00u >> (piece.bits % 8));
    for (unsigned i = full + 1; i < 16; ++i) b[i] = 0;
  }
  return b;
}

FieldElement xcb_length_block(std::size_t x_bits, std::size_t t_bits) {
  return {static_cast<std::uint64_t>(x_bits), static_cast<std::uint64_t>(t_bits)};
}

FieldElement xcb_hash(FieldElement h, const BitString& x, const BitString& t, LengthTerm length) {
  FieldElement acc = horner_blocks(FieldElement::zero(), h, x);
  acc = horner_blocks(acc, h, t);
  const FieldElement len =
      length == LengthTerm::append ? xcb_length_block(x.size(), t.size()) : FieldElement::zero();
  return (acc ^ len) * h;
}

FieldElement hctr_hash(FieldElement h, const BitString& p) {
  if (p.empty()) return h;
  const FieldElement acc = horner_blocks(FieldElement::zero(), h, p);
  return (acc ^ FieldElement::from_u128(p.size())) * h;
}

FieldElement hctr_hash_fixed(FieldElement h, const BitString& p) {
  BitString extended = p;
  extended.push_back(true);
  return hctr_hash(h, extended);
}

}  // namespace tes
