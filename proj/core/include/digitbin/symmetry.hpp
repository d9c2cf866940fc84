#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "digitbin/slices.hpp"
#include "digitbin/verification.hpp"

namespace digitbin {

/// Exact fraction in lowest terms with a positive denominator.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  static Rational reduced(i64 num, i64 den);
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// S(a) + S(m-a) == -1 over all units. Failure class "pair-sum".
Verification check_reflection(const ClassTable& table);

/// Sum of S over the units, exactly.
i64 unit_sum(const ClassTable& table);

/// unit_sum / phi(m) in lowest terms.
Rational grand_mean(const ClassTable& table);

/// #{units a mod m : (n+1)a mod m < a}. Throws NotGoodSlice.
u64 wrapping_set_size(const SliceSystem& sys, u64 n);

struct WrappingEntry {
  u64 n;
  u64 c;  ///< (n+1) mod m
  bool trivial;
  u64 size;
  u64 expected;
};

struct WrappingProfile {
  u64 b;
  unsigned lag;
  u64 m;
  u64 phi;
  std::vector<WrappingEntry> entries;  ///< one per good slice, ascending n
};

struct HalfGroupResult {
  WrappingProfile profile;
  Verification verification;
};

/// Sizes every wrapping set and checks phi(m)/2 on the non-trivial slices,
/// the forced sizes 0 and phi(m) on n = 0 and n = m-1, and that exactly one
/// of a, m-a wraps for every unit a on non-trivial slices.
/// Failure classes: "size", "trivial-size", "involution".
HalfGroupResult check_half_group(const SliceSystem& sys);

}  // namespace digitbin
