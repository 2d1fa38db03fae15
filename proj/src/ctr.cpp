#include "tes/ctr.hpp"

#include <algorithm>
#include <vector>

#include "tes/error.hpp"

namespace tes {

namespace {

constexpr std::size_t kChunkBlocks = 64;
// Below this many blocks the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelMinBlocks = 512;

std::uint32_t low32(const Block& x) {
  return (std::uint32_t{x[12]} << 24) | (std::uint32_t{x[13]} << 16) |
         (std::uint32_t{x[14]} << 8) | std::uint32_t{x[15]};
}

void set_low32(Block& x, std::uint32_t v) {
  x[12] = static_cast<std::uint8_t>(v >> 24);
  x[13] = static_cast<std::uint8_t>(v >> 16);
  x[14] = static_cast<std::uint8_t>(v >> 8);
  x[15] = static_cast<std::uint8_t>(v);
}

Block xor_index(const Block& s, std::uint64_t i) {
  Block b = s;
  for (int k = 0; k < 8; ++k) b[15 - k] ^= static_cast<std::uint8_t>(i >> (8 * k));
  return b;
}

template <typename CounterAt>
void keystream(const BlockCipher& c, std::span<Block> out, Exec exec, CounterAt counter_at) {
  const std::size_t n = out.size();
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = c.encrypt_block(counter_at(i));
    return;
  }
  const std::ptrdiff_t chunks = static_cast<std::ptrdiff_t>((n + kChunkBlocks - 1) / kChunkBlocks);
#pragma omp parallel for schedule(static) if (n >= kParallelMinBlocks)
  for (std::ptrdiff_t chunk = 0; chunk < chunks; ++chunk) {
    const std::size_t begin = static_cast<std::size_t>(chunk) * kChunkBlocks;
    const std::size_t end = std::min(n, begin + kChunkBlocks);
    for (std::size_t i = begin; i < end; ++i) out[i] = counter_at(i);
    auto part = out.subspan(begin, end - begin);
    c.encrypt_blocks(part, part);
  }
}

BitString apply_keystream(const BitString& data, std::span<const Block> ks) {
  std::vector<std::uint8_t> bytes(data.bytes().begin(), data.bytes().end());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] ^= ks[i / 16][i % 16];
  return BitString::from_bits(bytes, data.size());
}

}  // namespace

Block inc(const Block& x) { return inc_by(x, 1); }

Block inc(std::span<const std::uint8_t> x) {
  if (x.size() != 16) throw Error(Errc::bad_block_length, "inc expects a 16-byte block");
  Block b;
  std::copy(x.begin(), x.end(), b.begin());
  return inc(b);
}

Block inc_by(const Block& x, std::uint32_t r) {
  Block b = x;
  set_low32(b, low32(x) + r);
  return b;
}

void xcb_keystream(const BlockCipher& c, const Block& s, std::span<Block> out, Exec exec) {
  keystream(c, out, exec, [&s](std::size_t i) { return inc_by(s, static_cast<std::uint32_t>(i)); });
}

void xor_keystream(const BlockCipher& c, const Block& s, std::span<Block> out, Exec exec) {
  keystream(c, out, exec, [&s](std::size_t i) { return xor_index(s, i + 1); });
}

BitString xcb_ctr(const BlockCipher& c, const Block& s, const BitString& data, Exec exec) {
  std::vector<Block> ks((data.size() + 127) / 128);
  xcb_keystream(c, s, ks, exec);
  return apply_keystream(data, ks);
}

BitString xor_ctr(const BlockCipher& c, const Block& s, const BitString& data, Exec exec) {
  std::vector<Block> ks((data.size() + 127) / 128);
  xor_keystream(c, s, ks, exec);
  return apply_keystream(data, ks);
}

}  // namespace tes
