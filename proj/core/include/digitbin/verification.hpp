#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace digitbin {

struct Witness {
  std::string failure;  ///< failure class, e.g. "family-collision"
  std::string detail;
};

/// Outcome of one verification. At most one witness is kept per failure
/// class; `failures` counts every failing instance.
struct Verification {
  std::string check;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<Witness> witnesses;

  bool passed() const noexcept { return failures == 0; }

  void record_failure(std::string failure, std::string detail);
};

}  // namespace digitbin
