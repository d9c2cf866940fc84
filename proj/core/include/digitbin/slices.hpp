#pragma once

#include <cstdint>
#include <vector>

#include "digitbin/modarith.hpp"

namespace digitbin {

/// Base b and lag l with modulus m = b^(l+1). The good slices are the
/// n in 0..m-1 with floor(n / b^l) == n mod b; there are exactly b^l.
class SliceSystem {
 public:
  /// Throws Overflow when b^(l+1) does not fit in 64 bits or the good-slice
  /// set exceeds kMaxGoodSlices; InvalidArgument when b < 2 or l < 1.
  SliceSystem(u64 b, unsigned lag);

  static constexpr u64 kMaxGoodSlices = u64{1} << 24;

  u64 b() const noexcept { return b_; }
  unsigned lag() const noexcept { return lag_; }
  u64 m() const noexcept { return m_; }
  /// b^l, the width of one leading-digit block of slices.
  u64 block() const noexcept { return block_; }
  const std::vector<u64>& good_slices() const noexcept { return good_; }
  bool is_good(u64 n) const noexcept;
  bool is_unit(u64 a) const noexcept;

 private:
  u64 b_;
  unsigned lag_;
  u64 m_;
  u64 block_;
  std::vector<u64> good_;
};

inline SliceSystem build_slice_system(u64 b, unsigned lag) { return SliceSystem(b, lag); }

/// floor(m*r/p) for p > m, 1 <= r <= p-1.
u64 slice_index(const SliceSystem& sys, u64 p, u64 r) noexcept;

/// floor((n+1)a/m) - floor(na/m); 0 or 1 for a < m.
u64 slice_increment(const SliceSystem& sys, u64 a, u64 n) noexcept;

/// S(a) = -1 - floor(a/b) + sum over good n of slice_increment(a, n).
/// Throws NotUnit when gcd(a, m) > 1 and InvalidArgument when a is not in
/// 1..m-1.
i64 deviation_formula(const SliceSystem& sys, u64 a);

/// C(b^l mod p) - floor((p-1)/b), counting collisions directly.
/// Throws NotCoprime when gcd(p, b) > 1 and TooSmall when p <= m.
i64 deviation_direct(const SliceSystem& sys, u64 p);

/// S over the units mod m, stored densely over 1..m-1 with a unit mask.
class ClassTable {
 public:
  /// Throws Overflow when m exceeds kMaxModulus.
  explicit ClassTable(SliceSystem sys);

  static constexpr u64 kMaxModulus = u64{1} << 22;

  const SliceSystem& system() const noexcept { return sys_; }
  u64 modulus() const noexcept { return sys_.m(); }
  u64 unit_count() const noexcept { return units_.size(); }
  bool contains(u64 a) const noexcept { return a < mask_.size() && mask_[a]; }
  /// Throws NotUnit for residues outside the domain.
  i64 at(u64 a) const;
  /// Units in ascending order.
  const std::vector<u64>& units() const noexcept { return units_; }

 private:
  SliceSystem sys_;
  std::vector<char> mask_;
  std::vector<i64> values_;
  std::vector<u64> units_;
};

ClassTable class_table(const SliceSystem& sys);

}  // namespace digitbin
