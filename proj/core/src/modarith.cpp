#include "digitbin/modarith.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "digitbin/error.hpp"

namespace digitbin {

namespace {

using u128 = unsigned __int128;

// Below this many candidates a range is tested number by number.
constexpr u64 kDirectRangeCutoff = 64;
// Base primes for the segmented sieve are capped; survivors of a partial
// sieve are confirmed with is_prime.
constexpr u64 kMaxBasePrime = u64{1} << 20;
constexpr u64 kSegmentSize = u64{1} << 16;

bool miller_rabin_round(u64 n, u64 d, unsigned s, u64 a, Modulus mod) {
  u64 x = pow_mod(a % n, d, mod);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, mod);
    if (x == n - 1) return true;
  }
  return false;
}

std::vector<u64> simple_sieve(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace

Modulus::Modulus(u64 value) : value_(value) {
  if (value < 2) {
    throw Error(ErrorCode::invalid_argument,
                "modulus must be >= 2, got " + std::to_string(value));
  }
}

u64 mul_mod(u64 x, u64 y, Modulus n) noexcept {
  return static_cast<u64>(static_cast<u128>(x) * y % n.value());
}

u64 pow_mod(u64 x, u64 e, Modulus n) noexcept {
  u64 result = 1 % n.value();
  u64 base = x;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    e >>= 1;
  }
  return result;
}

GcdResult ext_gcd(i64 a, i64 b) {
  if (a == 0 && b == 0) {
    throw Error(ErrorCode::invalid_argument, "ext_gcd(0, 0) is undefined");
  }
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    const i64 q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

u64 inv_mod(u64 x, Modulus n) {
  // Unsigned Euclid on (x mod n, n), tracking the coefficient of x modulo n.
  u64 old_r = x % n.value(), r = n.value();
  u64 old_s = 1, s = 0;
  while (r != 0) {
    const u64 q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    // old_s - q*s mod n
    const u64 qs = mul_mod(q % n.value(), s, n);
    old_s = std::exchange(s, old_s >= qs ? old_s - qs : n.value() - (qs - old_s));
  }
  if (old_r != 1) {
    throw Error(ErrorCode::not_invertible,
                std::to_string(x) + " is not invertible modulo " +
                    std::to_string(n.value()));
  }
  return old_s % n.value();
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                     17, 19, 23, 29, 31, 37};
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const Modulus mod(n);
  for (u64 a : kWitnesses) {
    if (!miller_rabin_round(n, d, s, a, mod)) return false;
  }
  return true;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (lo > hi) return out;
  if (hi - lo < kDirectRangeCutoff) {
    for (u64 n = lo;; ++n) {
      if (is_prime(n)) out.push_back(n);
      if (n == hi) break;
    }
    return out;
  }

  const u64 root = isqrt(hi);
  const u64 base_limit = std::min(root, kMaxBasePrime);
  const bool partial = base_limit < root;
  const std::vector<u64> base = simple_sieve(base_limit);

  std::vector<char> composite;
  for (u64 seg_lo = std::max<u64>(lo, 2); seg_lo <= hi;) {
    const u64 seg_hi = (hi - seg_lo < kSegmentSize) ? hi : seg_lo + kSegmentSize - 1;
    composite.assign(seg_hi - seg_lo + 1, 0);
    for (u64 p : base) {
      const u64 sq = p * p;
      if (sq > seg_hi) break;
      const u64 offset = (p - seg_lo % p) % p;  // first multiple of p at or above seg_lo
      if (seg_hi - seg_lo < offset) continue;
      const u64 start = std::max(sq, seg_lo + offset);
      for (u64 j = start; j <= seg_hi; j += p) {
        composite[j - seg_lo] = 1;
        if (seg_hi - j < p) break;
      }
    }
    for (std::size_t i = 0; i < composite.size(); ++i) {
      const u64 n = seg_lo + i;
      if (composite[i]) continue;
      if (partial && !is_prime(n)) continue;
      out.push_back(n);
    }
    if (seg_hi == hi) break;
    seg_lo = seg_hi + 1;
  }
  return out;
}

u64 euler_phi(u64 n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "euler_phi(0) is undefined");
  u64 result = n;
  for (u64 p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

u64 isqrt(u64 n) noexcept {
  // Binary search on the root; avoids floating point.
  u64 lo = 0, hi = u64{1} << 32;
  while (lo < hi) {
    const u64 mid = lo + (hi - lo + 1) / 2;
    if (static_cast<u128>(mid) * mid <= n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

bool checked_pow(u64 base, unsigned exp, u64& out) noexcept {
  u64 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(acc, base, &acc)) return false;
  }
  out = acc;
  return true;
}

}  // namespace digitbin
