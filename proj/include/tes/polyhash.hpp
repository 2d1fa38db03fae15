#pragma once

#include <cstddef>
#include <vector>

#include "tes/bitstring.hpp"
#include "tes/field.hpp"

namespace tes {

// One parsed block: data holds the bits left-aligned with zeros after them,
// so data is already pad() of the piece.
struct BlockPiece {
  Block data{};
  unsigned bits = 128;
};

// Splits x into 128-bit blocks, the last holding 1..128 bits.
// Throws Errc::empty_string for an empty input.
std::vector<BlockPiece> parse_n(const BitString& x);

// Right-pads a piece of 1..128 bits with zeros; throws Errc::bad_length otherwise.
Block pad(const BlockPiece& piece);

// bin_64(|x|) || bin_64(|t|) as a field element.
FieldElement xcb_length_block(std::size_t x_bits, std::size_t t_bits);

enum class LengthTerm {
  append,    // the bin(|X|) || bin(|T|) term times h
  suppress,  // that term is dropped; the caller supplies its own length block
};

/* XCB polynomial hash: message blocks at h^{m+p+1} down to h^{p+2}, tweak
   blocks down to h^2, length block times h. Empty x or t contributes no
   blocks. Evaluated by Horner's rule. */
FieldElement xcb_hash(FieldElement h, const BitString& x, const BitString& t,
                      LengthTerm length = LengthTerm::append);

// HCTR hash: h for the empty string, otherwise P_1 h^{m+1} + ... + pad(P_m) h^2 + |P| h,
// with the bit length |P| mapped to the field as an integer.
FieldElement hctr_hash(FieldElement h, const BitString& p);

// The repaired HCTR hash H'(P) = H(P || 1).
FieldElement hctr_hash_fixed(FieldElement h, const BitString& p);

}  // namespace tes
