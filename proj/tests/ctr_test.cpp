#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tes/ctr.hpp"
#include "tes/error.hpp"

namespace tes {
namespace {

Block random_block(std::mt19937_64& rng) {
  Block b{};
  for (auto& v : b) v = static_cast<std::uint8_t>(rng());
  return b;
}

std::uint32_t low32(const Block& b) {
  return (std::uint32_t{b[12]} << 24) | (std::uint32_t{b[13]} << 16) | (std::uint32_t{b[14]} << 8) | b[15];
}

TEST(Ctr, IncWrapsLow32OnlyAndKeepsPrefix) {
  Block b{};
  b.fill(0xff);
  const Block n = inc(b);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(n[i], 0xff);
  EXPECT_EQ(low32(n), 0u);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Block x = random_block(rng);
    const auto r = static_cast<std::uint32_t>(rng());
    Block step = x;
    for (std::uint32_t k = 0; k < (r & 0xff); ++k) step = inc(step);
    EXPECT_EQ(inc_by(x, r & 0xff), step);
    EXPECT_EQ(low32(inc_by(x, r)), low32(x) + r);
  }
  EXPECT_THROW(inc(std::vector<std::uint8_t>(15)), Error);
}

TEST(Ctr, KeystreamDefinitions) {
  std::mt19937_64 rng(2);
  const CipherPtr c = make_cipher(CipherKind::aes, testing::random_bytes(rng, 16));
  const Block s = random_block(rng);
  std::vector<Block> ks(20), xs(20);
  xcb_keystream(*c, s, ks, Exec::serial);
  xor_keystream(*c, s, xs, Exec::serial);
  Block ctr = s;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    EXPECT_EQ(ks[i], c->encrypt_block(ctr));
    ctr = inc(ctr);
    Block t = s;
    t[15] ^= static_cast<std::uint8_t>(i + 1);
    EXPECT_EQ(xs[i], c->encrypt_block(t));
  }
}

TEST(Ctr, SerialAndParallelAgree) {
  std::mt19937_64 rng(3);
  const CipherPtr c = make_cipher(CipherKind::aes, testing::random_bytes(rng, 16));
  for (std::size_t bits : {0, 1, 128, 129, 8190, 128 * 1500 + 17}) {
    const Block s = random_block(rng);
    const BitString data = testing::random_bits(rng, bits);
    EXPECT_EQ(xcb_ctr(*c, s, data, Exec::serial), xcb_ctr(*c, s, data, Exec::parallel)) << bits;
    EXPECT_EQ(xor_ctr(*c, s, data, Exec::serial), xor_ctr(*c, s, data, Exec::parallel)) << bits;
  }
}

TEST(Ctr, InvolutionAndLengthPreserving) {
  std::mt19937_64 rng(4);
  const CipherPtr c = make_cipher(CipherKind::test_permutation, testing::random_bytes(rng, 16));
  for (int i = 0; i < 200; ++i) {
    const Block s = random_block(rng);
    const BitString data = testing::random_bits(rng, rng() % 2000);
    const BitString once = xcb_ctr(*c, s, data);
    ASSERT_EQ(once.size(), data.size());
    ASSERT_EQ(xcb_ctr(*c, s, once), data);
    ASSERT_EQ(xor_ctr(*c, s, xor_ctr(*c, s, data)), data);
  }
}

TEST(Ctr, PartialBlockUsesLeadingKeystreamBits) {
  std::mt19937_64 rng(5);
  const CipherPtr c = make_cipher(CipherKind::aes, testing::random_bytes(rng, 16));
  const Block s = random_block(rng);
  const BitString z = BitString::zeros(131);
  const BitString out = xcb_ctr(*c, s, z);
  const BitString k0 = BitString::from_block(c->encrypt_block(s));
  const BitString k1 = BitString::from_block(c->encrypt_block(inc(s)), 3);
  EXPECT_EQ(out, concat(k0, k1));
}

}  // namespace
}  // namespace tes
