#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tes {

__extension__ typedef unsigned __int128 u128;

using Block = std::array<std::uint8_t, 16>;

/* FieldElement is an element of GF(2^128) = GF(2)[x] / (x^128 + x^7 + x^2 + x + 1).
   The 128-bit value is read as a polynomial with the least significant bit as
   the x^0 coefficient, so the integer 1 is the multiplicative identity and
   the big-endian block 0^127 || 1 maps to it. */
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr FieldElement(std::uint64_t hi, std::uint64_t lo) : hi_(hi), lo_(lo) {}

  static constexpr FieldElement zero() { return {}; }
  static constexpr FieldElement one() { return {0, 1}; }
  // The polynomial x^k, 0 <= k < 128.
  static constexpr FieldElement monomial(unsigned k) {
    return k < 64 ? FieldElement{0, std::uint64_t{1} << k}
                  : FieldElement{std::uint64_t{1} << (k - 64), 0};
  }
  static constexpr FieldElement from_u128(u128 v) {
    return {static_cast<std::uint64_t>(v >> 64), static_cast<std::uint64_t>(v)};
  }
  static FieldElement from_block(const Block& b);
  // 32 hex digits, most significant first; throws Errc::parse_error.
  static FieldElement from_hex(std::string_view hex);

  constexpr std::uint64_t hi() const { return hi_; }
  constexpr std::uint64_t lo() const { return lo_; }
  constexpr u128 to_u128() const { return (u128{hi_} << 64) | lo_; }
  constexpr bool is_zero() const { return hi_ == 0 && lo_ == 0; }
  constexpr bool coeff(unsigned k) const {
    return k < 64 ? ((lo_ >> k) & 1) != 0 : ((hi_ >> (k - 64)) & 1) != 0;
  }

  Block to_block() const;
  std::string to_hex() const;

  friend constexpr bool operator==(const FieldElement&, const FieldElement&) = default;
  friend constexpr FieldElement operator^(FieldElement a, FieldElement b) {
    return {a.hi_ ^ b.hi_, a.lo_ ^ b.lo_};
  }
  FieldElement& operator^=(FieldElement b) { return *this = *this ^ b; }
  friend FieldElement operator*(FieldElement a, FieldElement b);
  FieldElement& operator*=(FieldElement b) { return *this = *this * b; }

 private:
  std::uint64_t hi_ = 0;
  std::uint64_t lo_ = 0;
};

namespace field {

// Low 128 bits of the reduction polynomial: x^7 + x^2 + x + 1.
inline constexpr std::uint64_t kReductionTail = 0x87;

inline constexpr u128 kGroupOrder = ~u128{0};  // 2^128 - 1

// The distinct prime factors of 2^128 - 1.
inline constexpr std::array<std::uint64_t, 9> kGroupOrderFactors = {
    3, 5, 17, 257, 641, 65537, 274177, 6700417, 67280421310721ULL};

// Returns true iff the factor list multiplies out to 2^128 - 1.
bool group_order_factors_consistent();

FieldElement add(FieldElement a, FieldElement b);
FieldElement mul(FieldElement a, FieldElement b);
FieldElement square(FieldElement a);
// pow(0, 0) is defined as 1.
FieldElement pow(FieldElement a, u128 e);
// Throws Errc::zero_inverse for a == 0.
FieldElement inv(FieldElement a);
// The unique square root, a^(2^127).
FieldElement sqrt(FieldElement a);

// Prime factors of r, assuming r divides 2^128 - 1. Throws Errc::not_a_divisor otherwise.
std::vector<std::uint64_t> factor_divisor(u128 r);
// All divisors of 2^128 - 1 that are <= bound, ascending.
std::vector<u128> divisors_up_to(u128 bound);

// An element of exact multiplicative order r; throws Errc::not_a_divisor
// unless r > 1 and r divides 2^128 - 1.
FieldElement element_of_order(u128 r);
// Exact multiplicative order of a nonzero element.
u128 order(FieldElement a);
// Smallest divisor r <= max_order of 2^128 - 1 with h^r = 1, if any.
// Throws Errc::zero_element for h == 0.
std::optional<u128> order_divisor(FieldElement h, u128 max_order);

}  // namespace field

std::string to_string_u128(u128 v);
// Decimal digits only; throws Errc::parse_error.
u128 parse_u128(std::string_view s);

}  // namespace tes
