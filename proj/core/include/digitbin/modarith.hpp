#pragma once

#include <cstdint>
#include <vector>

namespace digitbin {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// A modulus n >= 2. Construction throws Error(invalid_argument) otherwise.
class Modulus {
 public:
  explicit Modulus(u64 value);

  u64 value() const noexcept { return value_; }

  friend bool operator==(Modulus, Modulus) = default;

 private:
  u64 value_;
};

/// (x * y) mod n using a 128-bit intermediate. Requires x, y < n.
u64 mul_mod(u64 x, u64 y, Modulus n) noexcept;

/// x^e mod n by square-and-multiply. Requires x < n.
u64 pow_mod(u64 x, u64 e, Modulus n) noexcept;

struct GcdResult {
  i64 g;  ///< gcd(a, b), always positive
  i64 s;
  i64 t;  ///< s*a + t*b == g
};

/// Extended Euclid. a and b must not both be zero.
GcdResult ext_gcd(i64 a, i64 b);

/// Inverse of x modulo n in 1..n-1. Throws Error(not_invertible) when
/// gcd(x, n) > 1.
u64 inv_mod(u64 x, Modulus n);

/// Exact primality for every 64-bit input (deterministic Miller-Rabin).
bool is_prime(u64 n) noexcept;

/// All primes in [lo, hi], ascending. Empty when lo > hi.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

/// Euler's totient by trial-division factorization. Requires n >= 1.
u64 euler_phi(u64 n);

/// floor(sqrt(n)).
u64 isqrt(u64 n) noexcept;

/// Sets out = base^exp. Returns false (out unspecified) on 64-bit overflow.
bool checked_pow(u64 base, unsigned exp, u64& out) noexcept;

}  // namespace digitbin
