#include "digitbin/error.hpp"

namespace digitbin {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::not_invertible: return "NotInvertible";
    case ErrorCode::not_prime: return "NotPrime";
    case ErrorCode::gate_undefined: return "GateUndefined";
    case ErrorCode::overflow: return "Overflow";
    case ErrorCode::not_unit: return "NotUnit";
    case ErrorCode::not_coprime: return "NotCoprime";
    case ErrorCode::too_small: return "TooSmall";
    case ErrorCode::not_good_slice: return "NotGoodSlice";
    case ErrorCode::config_invalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace digitbin
