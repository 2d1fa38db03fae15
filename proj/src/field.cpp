#include "tes/field.hpp"

#include <algorithm>

#include "tes/error.hpp"

namespace tes {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

FieldElement FieldElement::from_block(const Block& b) {
  std::uint64_t hi = 0, lo = 0;
  for (int i = 0; i < 8; ++i) hi = (hi << 8) | b[i];
  for (int i = 8; i < 16; ++i) lo = (lo << 8) | b[i];
  return {hi, lo};
}

Block FieldElement::to_block() const {
  Block b{};
  for (int i = 0; i < 8; ++i) {
    b[i] = static_cast<std::uint8_t>(hi_ >> (56 - 8 * i));
    b[8 + i] = static_cast<std::uint8_t>(lo_ >> (56 - 8 * i));
  }
  return b;
}

FieldElement FieldElement::from_hex(std::string_view hex) {
  if (hex.size() != 32) {
    throw Error(Errc::parse_error, "field element must be 32 hex digits");
  }
  u128 v = 0;
  for (char c : hex) {
    int d = hex_value(c);
    if (d < 0) throw Error(Errc::parse_error, "invalid hex digit in field element");
    v = (v << 4) | static_cast<unsigned>(d);
  }
  return from_u128(v);
}

std::string FieldElement::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(32, '0');
  u128 v = to_u128();
  for (int i = 31; i >= 0; --i) {
    out[i] = kDigits[static_cast<unsigned>(v & 0xF)];
    v >>= 4;
  }
  return out;
}

// Shift-and-add, most significant coefficient of b first.
FieldElement operator*(FieldElement a, FieldElement b) {
  std::uint64_t rh = 0, rl = 0;
  for (int i = 127; i >= 0; --i) {
    const std::uint64_t carry = rh >> 63;
    rh = (rh << 1) | (rl >> 63);
    rl <<= 1;
    rl ^= (0 - carry) & field::kReductionTail;
    const std::uint64_t bit = i >= 64 ? (b.hi_ >> (i - 64)) & 1 : (b.lo_ >> i) & 1;
    const std::uint64_t mask = 0 - bit;
    rh ^= a.hi_ & mask;
    rl ^= a.lo_ & mask;
  }
  return {rh, rl};
}

namespace field {

bool group_order_factors_consistent() {
  u128 product = 1;
  for (std::uint64_t p : kGroupOrderFactors) product *= p;
  return product == kGroupOrder;
}

FieldElement add(FieldElement a, FieldElement b) { return a ^ b; }
FieldElement mul(FieldElement a, FieldElement b) { return a * b; }
FieldElement square(FieldElement a) { return a * a; }

FieldElement pow(FieldElement a, u128 e) {
  FieldElement result = FieldElement::one();
  FieldElement base = a;
  while (e != 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

FieldElement inv(FieldElement a) {
  if (a.is_zero()) throw Error(Errc::zero_inverse, "zero has no multiplicative inverse");
  return pow(a, kGroupOrder - 1);
}

FieldElement sqrt(FieldElement a) {
  for (int i = 0; i < 127; ++i) a *= a;
  return a;
}

std::vector<std::uint64_t> factor_divisor(u128 r) {
  if (r == 0 || kGroupOrder % r != 0) {
    throw Error(Errc::not_a_divisor, to_string_u128(r) + " does not divide 2^128-1");
  }
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : kGroupOrderFactors) {
    if (r % p == 0) {
      primes.push_back(p);
      r /= p;
    }
  }
  return primes;
}

std::vector<u128> divisors_up_to(u128 bound) {
  std::vector<u128> out;
  const unsigned count = static_cast<unsigned>(kGroupOrderFactors.size());
  for (unsigned mask = 0; mask < (1u << count); ++mask) {
    u128 d = 1;
    bool within = true;
    for (unsigned i = 0; i < count && within; ++i) {
      if (mask & (1u << i)) {
        d *= kGroupOrderFactors[i];
        within = d <= bound;
      }
    }
    if (within && d <= bound) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FieldElement element_of_order(u128 r) {
  if (r <= 1) throw Error(Errc::not_a_divisor, "order must exceed 1");
  const std::vector<std::uint64_t> primes = factor_divisor(r);
  const u128 cofactor = kGroupOrder / r;
  // Candidate bases 2, 3, 4, ... read as polynomials.
  for (u128 g = 2;; ++g) {
    const FieldElement t = pow(FieldElement::from_u128(g), cofactor);
    if (t == FieldElement::one()) continue;
    bool exact = true;
    for (std::uint64_t p : primes) {
      if (pow(t, r / p) == FieldElement::one()) {
        exact = false;
        break;
      }
    }
    if (exact) return t;
  }
}

u128 order(FieldElement a) {
  if (a.is_zero()) throw Error(Errc::zero_element, "zero has no multiplicative order");
  u128 ord = kGroupOrder;
  for (std::uint64_t p : kGroupOrderFactors) {
    if (pow(a, ord / p) == FieldElement::one()) ord /= p;
  }
  return ord;
}

std::optional<u128> order_divisor(FieldElement h, u128 max_order) {
  if (h.is_zero()) throw Error(Errc::zero_element, "order_divisor of zero");
  for (u128 d : divisors_up_to(max_order)) {
    if (pow(h, d) == FieldElement::one()) return d;
  }
  return std::nullopt;
}

}  // namespace field

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 parse_u128(std::string_view s) {
  if (s.empty()) throw Error(Errc::parse_error, "empty integer");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error(Errc::parse_error, "invalid decimal integer: " + std::string(s));
    const unsigned digit = static_cast<unsigned>(c - '0');
    if (v > (field::kGroupOrder - digit) / 10) {
      throw Error(Errc::parse_error, "integer out of range: " + std::string(s));
    }
    v = v * 10 + digit;
  }
  return v;
}

}  // namespace tes
