#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library; every function follows the textbook definition directly.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d <= n / d; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<bool> sieve(u64 limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (u64 i = 2; i * i <= limit; ++i) {
    if (!prime[i]) continue;
    for (u64 j = i * i; j <= limit; j += i) prime[j] = false;
  }
  return prime;
}

inline u64 phi_by_gcd(u64 n) {
  u64 count = 0;
  for (u64 a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
  return count;
}

inline u64 digit(u64 p, u64 b, u64 r) { return b * r / p; }

inline u64 collision_count(u64 p, u64 b, u64 g) {
  u64 count = 0;
  for (u64 r = 1; r < p; ++r) count += digit(p, b, r) == digit(p, b, g * r % p);
  return count;
}

inline u64 ipow(u64 b, unsigned e) {
  u64 out = 1;
  while (e--) out *= b;
  return out;
}

inline std::vector<u64> good_slices(u64 b, unsigned lag) {
  const u64 block = ipow(b, lag);
  const u64 m = block * b;
  std::vector<u64> out;
  for (u64 n = 0; n < m; ++n) {
    if (n / block == n % b) out.push_back(n);
  }
  return out;
}

/// -1 - floor(a/b) + sum over good n of floor((n+1)a/m) - floor(na/m),
/// with the good set found by scanning every n.
inline i64 deviation_formula(u64 b, unsigned lag, u64 a) {
  const u64 m = ipow(b, lag + 1);
  i64 total = -1 - static_cast<i64>(a / b);
  for (u64 n : good_slices(b, lag)) total += static_cast<i64>((n + 1) * a / m - n * a / m);
  return total;
}

/// C(b^l mod p) - floor((p-1)/b) by digit enumeration.
inline i64 deviation_brute(u64 p, u64 b, unsigned lag) {
  const u64 g = ipow(b, lag) % p;
  return static_cast<i64>(collision_count(p, b, g)) - static_cast<i64>((p - 1) / b);
}

inline u64 wrapping_size(u64 m, u64 n) {
  u64 count = 0;
  for (u64 a = 1; a < m; ++a) {
    if (std::gcd(a, m) == 1 && (n + 1) * a % m < a) ++count;
  }
  return count;
}

/// Units g with C(g) = 0, found by full enumeration.
inline std::vector<u64> deranging_units(u64 p, u64 b) {
  std::vector<u64> out;
  for (u64 g = 1; g < p; ++g) {
    if (std::gcd(g, p) == 1 && collision_count(p, b, g) == 0) out.push_back(g);
  }
  return out;
}

}  // namespace oracle
