#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tes {

enum class Errc {
  zero_inverse,
  zero_element,
  not_a_divisor,
  bad_block_length,
  bad_key_length,
  bad_length,
  empty_string,
  length_bounds,
  partial_block_rejected,
  oracle_failure,
  iteration_budget_exhausted,
  degenerate_sample,
  index_out_of_span,
  bad_swap,
  width_too_large,
  unknown_scheme,
  unsupported_block_size,
  bad_argument,
  parse_error,
};

std::string_view errc_name(Errc code) noexcept;

// Every fallible library operation throws this; the CLI maps it to exit 1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tes
