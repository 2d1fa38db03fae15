#pragma once

#include <cstdint>
#include <span>

#include "tes/bitstring.hpp"
#include "tes/blockcipher.hpp"
#include "tes/exec.hpp"

namespace tes {

// msb_96(x) || bin_32(int(lsb_32(x)) + 1 mod 2^32).
Block inc(const Block& x);
// Throws Errc::bad_block_length unless x is 16 bytes.
Block inc(std::span<const std::uint8_t> x);
// inc applied r times, as one 32-bit modular addition.
Block inc_by(const Block& x, std::uint32_t r);

// Keystream blocks E(inc^i(s)) for i = 0..out.size()-1.
void xcb_keystream(const BlockCipher& c, const Block& s, std::span<Block> out,
                   Exec exec = Exec::parallel);
// Keystream blocks E(s xor bin_128(i)) for i = 1..out.size().
void xor_keystream(const BlockCipher& c, const Block& s, std::span<Block> out,
                   Exec exec = Exec::parallel);

/* Counter-mode transforms. Output length equals input length; a partial final
   block is XORed with the leading bits of its keystream block. An empty input
   yields an empty output. Both are involutions for a fixed (c, s). */
BitString xcb_ctr(const BlockCipher& c, const Block& s, const BitString& data,
                  Exec exec = Exec::parallel);
BitString xor_ctr(const BlockCipher& c, const Block& s, const BitString& data,
                  Exec exec = Exec::parallel);

}  // namespace tes
