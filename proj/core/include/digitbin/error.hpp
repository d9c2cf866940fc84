#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace digitbin {

enum class ErrorCode {
  invalid_argument,
  not_invertible,
  not_prime,
  gate_undefined,
  overflow,
  not_unit,
  not_coprime,
  too_small,
  not_good_slice,
  config_invalid,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type. The code names the
// violated precondition; what() carries a human-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& reason)
      : std::runtime_error(reason), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace digitbin
