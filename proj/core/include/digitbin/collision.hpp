#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "digitbin/modarith.hpp"
#include "digitbin/verification.hpp"

namespace digitbin {

/// Residues 1..p-1 split into b contiguous bins by the leading base-b digit
/// of r/p. Requires b >= 2, p > b and gcd(p, b) = 1; p need not be prime.
class DigitSystem {
 public:
  DigitSystem(u64 p, u64 b);

  u64 p() const noexcept { return p_; }
  u64 b() const noexcept { return b_; }
  /// Baseline bin length floor((p-1)/b).
  u64 bin_size() const noexcept { return (p_ - 1) / b_; }
  Modulus modulus() const noexcept { return Modulus(p_); }

 private:
  u64 p_;
  u64 b_;
};

/// Closed interval [lo, hi] of residues sharing digit d.
struct Bin {
  u64 digit;
  u64 lo;
  u64 hi;

  u64 size() const noexcept { return hi - lo + 1; }
  friend bool operator==(const Bin&, const Bin&) = default;
};

/// floor(b*r/p) for 1 <= r <= p-1.
u64 digit(const DigitSystem& sys, u64 r) noexcept;

std::vector<Bin> bins(const DigitSystem& sys);

/// Ground truth: #{r : digit(r) == digit(g*r mod p)} by enumeration.
/// Requires g to be a unit in 1..p-1.
u64 collision_count_brute(const DigitSystem& sys, u64 g);

/// #{x in 1..p-1 : x == (g*x mod p) (mod b)}; always equal to the brute
/// count. Picks the run-grouped evaluation when g is small relative to p.
u64 collision_count_linear(const DigitSystem& sys, u64 g);

/// Smallest x in 1..p-1 with x == (g*x mod p) (mod b), if any.
std::optional<u64> first_collision(const DigitSystem& sys, u64 g);

namespace detail {

/// Walks x = 1..p-1. O(p).
u64 linear_count_scan(const DigitSystem& sys, u64 g);

/// Groups x by k = floor(g*x/p); on each run g*x mod p = g*x - k*p, so the
/// condition becomes the linear congruence (1-g)x == -kp (mod b). O(g).
u64 linear_count_runs(const DigitSystem& sys, u64 g);

}  // namespace detail

/// c in 1..p-1 with c*(1-g) == b (mod p). Throws NotPrime for composite p
/// and GateUndefined for g == 1.
u64 gate_parameter(const DigitSystem& sys, u64 g);

struct GateMember {
  u64 u;  ///< 1..b-1
  u64 c;  ///< gate parameter, equal to b-u
  u64 g;  ///< -u/(b-u) mod p
  friend bool operator==(const GateMember&, const GateMember&) = default;
};

/// The b-1 deranging multipliers, ordered by u. Throws NotPrime.
std::vector<GateMember> gate_family(const DigitSystem& sys);

struct CollisionProfile {
  u64 g;
  u64 count;
  std::optional<u64> gate_parameter;  ///< empty for g == 1
  bool deranging;
};

/// Count plus gate data for one multiplier. Throws NotPrime.
CollisionProfile collision_profile(const DigitSystem& sys, u64 g);

struct GateOptions {
  /// Every unit outside the family is checked when p <= this bound;
  /// otherwise `samples` pseudo-random outside units are.
  u64 exhaustive_threshold = 100000;
  unsigned samples = 64;
  u64 seed = 0;
};

struct GateReport {
  Verification verification;
  std::vector<GateMember> family;
  bool exhaustive = false;
  u64 outside_checked = 0;

  bool passed() const noexcept { return verification.passed(); }
};

/// Checks that the family members are exactly the units with C(g) = 0.
/// Failure classes: "family-size", "family-collision", "outside-deranging".
GateReport verify_gate(const DigitSystem& sys, const GateOptions& options = {});

}  // namespace digitbin
