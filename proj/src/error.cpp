#include "tes/error.hpp"

namespace tes {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::zero_inverse: return "ZeroInverse";
    case Errc::zero_element: return "ZeroElement";
    case Errc::not_a_divisor: return "NotADivisor";
    case Errc::bad_block_length: return "BadBlockLength";
    case Errc::bad_key_length: return "BadKeyLength";
    case Errc::bad_length: return "BadLength";
    case Errc::empty_string: return "EmptyString";
    case Errc::length_bounds: return "LengthBounds";
    case Errc::partial_block_rejected: return "PartialBlockRejected";
    case Errc::oracle_failure: return "OracleFailure";
    case Errc::iteration_budget_exhausted: return "IterationBudgetExhausted";
    case Errc::degenerate_sample: return "DegenerateSample";
    case Errc::index_out_of_span: return "IndexOutOfSpan";
    case Errc::bad_swap: return "BadSwap";
    case Errc::width_too_large: return "WidthTooLarge";
    case Errc::unknown_scheme: return "UnknownScheme";
    case Errc::unsupported_block_size: return "UnsupportedBlockSize";
    case Errc::bad_argument: return "BadArgument";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace tes
