#pragma once

// Shared helpers and independent oracles for the test binaries. Nothing here
// calls into the field or hash code it is used to check.

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "tes/bitstring.hpp"
#include "tes/field.hpp"

namespace tes::testing {

inline std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

inline FieldElement random_element(std::mt19937_64& rng) { return {rng(), rng()}; }

inline FieldElement random_nonzero(std::mt19937_64& rng) {
  for (;;) {
    const FieldElement a = random_element(rng);
    if (!a.is_zero()) return a;
  }
}

inline BitString random_bits(std::mt19937_64& rng, std::size_t bits) {
  const auto bytes = random_bytes(rng, (bits + 7) / 8);
  return BitString::from_bits(bytes, bits);
}

// Schoolbook carry-less product into 256 bits, then long division by
// x^128 + x^7 + x^2 + x + 1 one bit at a time from the top.
inline FieldElement oracle_mul(FieldElement a, FieldElement b) {
  std::array<std::uint64_t, 4> prod{};  // little-endian limbs
  const std::array<std::uint64_t, 2> av{a.lo(), a.hi()};
  for (unsigned i = 0; i < 128; ++i) {
    if (!b.coeff(i)) continue;
    for (unsigned j = 0; j < 128; ++j) {
      if ((av[j / 64] >> (j % 64)) & 1) {
        const unsigned k = i + j;
        prod[k / 64] ^= std::uint64_t{1} << (k % 64);
      }
    }
  }
  const auto flip = [&](unsigned k) { prod[k / 64] ^= std::uint64_t{1} << (k % 64); };
  for (int k = 254; k >= 128; --k) {
    if ((prod[k / 64] >> (k % 64)) & 1) {
      flip(k);
      flip(k - 128 + 7);
      flip(k - 128 + 2);
      flip(k - 128 + 1);
      flip(k - 128);
    }
  }
  return {prod[1], prod[0]};
}

inline FieldElement oracle_pow(FieldElement a, unsigned e) {
  FieldElement r = FieldElement::one();
  for (unsigned i = 0; i < e; ++i) r = oracle_mul(r, a);
  return r;
}

// Block i of x (0-based), zero-padded, read as a big-endian field element.
inline FieldElement oracle_block(const BitString& x, std::size_t i) {
  std::uint64_t hi = 0, lo = 0;
  for (std::size_t k = 0; k < 128; ++k) {
    const std::size_t pos = i * 128 + k;
    const bool bit = pos < x.size() && x.bit(pos);
    if (k < 64) {
      hi = (hi << 1) | bit;
    } else {
      lo = (lo << 1) | bit;
    }
  }
  return {hi, lo};
}

inline std::size_t block_count(const BitString& x) { return (x.size() + 127) / 128; }

// HCTR hash written as an explicit sum of powers.
inline FieldElement oracle_hctr_hash(FieldElement h, const BitString& p) {
  if (p.empty()) return h;
  const std::size_t m = block_count(p);
  FieldElement acc;
  for (std::size_t i = 0; i < m; ++i) {
    acc ^= oracle_mul(oracle_block(p, i), oracle_pow(h, static_cast<unsigned>(m + 1 - i)));
  }
  return acc ^ oracle_mul(FieldElement{0, p.size()}, h);
}

// XCB hash as an explicit sum of powers, length block included.
inline FieldElement oracle_xcb_hash(FieldElement h, const BitString& x, const BitString& t) {
  const std::size_t m = block_count(x), p = block_count(t);
  FieldElement acc;
  for (std::size_t i = 0; i < m; ++i) {
    acc ^= oracle_mul(oracle_block(x, i), oracle_pow(h, static_cast<unsigned>(m + p + 1 - i)));
  }
  for (std::size_t i = 0; i < p; ++i) {
    acc ^= oracle_mul(oracle_block(t, i), oracle_pow(h, static_cast<unsigned>(p + 1 - i)));
  }
  return acc ^ oracle_mul(FieldElement{x.size(), t.size()}, h);
}

// Brute-force Y_r for a width-w counter.
inline std::set<std::uint64_t> oracle_y_set(unsigned w, std::uint64_t r) {
  const std::uint64_t m = std::uint64_t{1} << w;
  std::set<std::uint64_t> out;
  for (std::uint64_t y = 0; y < m; ++y) out.insert(((y + r) % m) ^ y);
  return out;
}

}  // namespace tes::testing
