#include "digitbin/verification.hpp"

#include <algorithm>

namespace digitbin {

void Verification::record_failure(std::string failure, std::string detail) {
  ++failures;
  const bool seen = std::any_of(witnesses.begin(), witnesses.end(),
                                [&](const Witness& w) { return w.failure == failure; });
  if (!seen) witnesses.push_back({std::move(failure), std::move(detail)});
}

}  // namespace digitbin
