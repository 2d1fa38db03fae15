#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tes/exec.hpp"
#include "tes/field.hpp"

namespace tes {

// ---- inc-collision sets -------------------------------------------------
//
// For a counter of width w, Y_r = { ((Y + r) mod 2^w) xor Y : Y in {0,1}^w } is
// the set of XOR offsets inc^r can produce, W_0 = Y_0 and
// W_r = Y_r \ (Y_0 u ... u Y_{r-1}); w_max is the largest #W_r.

inline constexpr unsigned kMaxExhaustiveWidth = 16;
inline constexpr unsigned kMaxCarryClassWidth = 32;

struct IncSetTable {
  unsigned width = 0;
  std::uint64_t r_max = 0;
  std::vector<std::vector<std::uint32_t>> y_sets;  // index r, each sorted
  std::vector<std::vector<std::uint32_t>> w_sets;
  std::size_t w_max = 0;
};

/* Exhaustive enumeration over all Y for r = 0..r_max. Throws
   Errc::width_too_large above kMaxExhaustiveWidth and Errc::bad_argument
   when r_max >= 2^width. */
IncSetTable compute_inc_sets(unsigned width, std::uint64_t r_max, Exec exec = Exec::parallel);

/* Carry-class route. Adding r to Y flips exactly the bits of r xor c, where
   c is the carry-in vector; c runs over the sequences with c_0 = 0 in which
   c_{k+1} is forced to c_k whenever r_k == c_k and is free otherwise. */
std::vector<std::uint64_t> carry_class_y_set(unsigned width, std::uint64_t r);
bool carry_class_contains(unsigned width, std::uint64_t r, std::uint64_t d);
// Smallest r with d in Y_r.
std::uint64_t min_offset_index(unsigned width, std::uint64_t d);

struct IncSample {
  std::uint64_t r = 0;
  std::size_t y_count = 0;
  std::size_t w_count = 0;
};

struct IncSampleReport {
  unsigned width = 0;
  std::uint64_t r_max = 0;
  std::uint64_t seed = 0;
  std::vector<IncSample> samples;  // ascending r
  std::size_t max_w = 0;
};

/* #Y_r and #W_r by the carry-class route for r = 0 plus `samples - 1` distinct
   seeded draws from 1..r_max, or every r when samples > r_max. */
IncSampleReport sample_inc_sets(unsigned width, std::uint64_t r_max, std::size_t samples,
                                std::uint64_t seed, Exec exec = Exec::parallel);
IncSampleReport sample_w32(std::uint64_t r_max, std::size_t samples, std::uint64_t seed,
                           Exec exec = Exec::parallel);

// ---- security bounds ----------------------------------------------------

struct BoundParams {
  u128 q = 0;              // number of queries
  std::uint64_t ell = 0;   // max blocks per query
  u128 sigma = 0;          // total blocks queried, tweaks included
  unsigned n = 128;        // block size in bits
};

// q = 2^30, ell = 2^8 + 1, sigma = 2^38 + 2^30, n = 128.
BoundParams default_bound_params();
// Throws Errc::bad_argument unless q >= 1, ell >= 1, sigma >= q and 1 <= n <= 1024.
void validate(const BoundParams& p);

// Sums of terms such as "2^38+2^30" or "1073741824"; throws Errc::parse_error.
u128 parse_count_expr(std::string_view expr);

struct BoundValue {
  std::string scheme;
  std::string formula;
  double advantage = 0;
  double advantage_log2 = 0;
};

std::vector<std::string_view> bound_scheme_names();
// Exact rational evaluation, rounded only for the final log2. Throws
// Errc::unknown_scheme, or Errc::unsupported_block_size for TET when
// 2^n - 1 does not factor over the known primes.
BoundValue eval_bound(std::string_view scheme, const BoundParams& p);
// Euler's phi of 2^n - 1, as a decimal string.
std::string phi_mersenne(unsigned n);

struct BoundRow {
  std::string label;
  BoundValue value;
};

struct BoundReport {
  BoundParams params;
  std::vector<BoundRow> rows;
  std::vector<std::string> notes;

  std::string to_text() const;
  std::string to_structured() const;
};

// The twelve-row comparison, in table order.
BoundReport table1_report(const BoundParams& p);

}  // namespace tes
