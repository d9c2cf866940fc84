#include "digitbin/symmetry.hpp"

#include <numeric>
#include <string>

#include "digitbin/error.hpp"

namespace digitbin {

namespace {

using u128 = unsigned __int128;

bool wraps(u64 c, u64 a, u64 m) {
  return static_cast<u64>(static_cast<u128>(c) * a % m) < a;
}

}  // namespace

Rational Rational::reduced(i64 num, i64 den) {
  if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i64 g = std::gcd(num, den);
  return {num / g, den / g};
}

std::string Rational::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

Verification check_reflection(const ClassTable& table) {
  Verification v;
  v.check = "reflection";
  const u64 m = table.modulus();
  for (u64 a : table.units()) {
    if (2 * a > m) break;
    ++v.checked;
    const i64 lhs = table.at(a);
    const i64 rhs = table.at(m - a);
    if (lhs + rhs != -1) {
      v.record_failure("pair-sum", "a=" + std::to_string(a) + " S(a)=" + std::to_string(lhs) +
                                       " S(m-a)=" + std::to_string(rhs));
    }
  }
  return v;
}

i64 unit_sum(const ClassTable& table) {
  i64 sum = 0;
  for (u64 a : table.units()) sum += table.at(a);
  return sum;
}

Rational grand_mean(const ClassTable& table) {
  return Rational::reduced(unit_sum(table), static_cast<i64>(table.unit_count()));
}

u64 wrapping_set_size(const SliceSystem& sys, u64 n) {
  if (!sys.is_good(n)) {
    throw Error(ErrorCode::not_good_slice,
                std::to_string(n) + " is not a good slice modulo " + std::to_string(sys.m()));
  }
  const u64 m = sys.m();
  const u64 c = (n + 1) % m;
  u64 size = 0;
  for (u64 a = 1; a < m; ++a) {
    if (sys.is_unit(a) && wraps(c, a, m)) ++size;
  }
  return size;
}

HalfGroupResult check_half_group(const SliceSystem& sys) {
  const u64 m = sys.m();
  const u64 phi = euler_phi(m);
  HalfGroupResult result{{sys.b(), sys.lag(), m, phi, {}}, {}};
  Verification& v = result.verification;
  v.check = "halfgroup";

  for (u64 n : sys.good_slices()) {
    const u64 c = (n + 1) % m;
    const bool trivial = c == 0 || c == 1;
    const u64 size = wrapping_set_size(sys, n);
    const u64 expected = !trivial ? phi / 2 : (c == 0 ? phi : 0);
    result.profile.entries.push_back({n, c, trivial, size, expected});

    ++v.checked;
    if (size != expected) {
      v.record_failure(trivial ? "trivial-size" : "size",
                       "n=" + std::to_string(n) + " size=" + std::to_string(size) +
                           " expected=" + std::to_string(expected));
    }
    if (trivial) continue;
    for (u64 a = 1; 2 * a < m; ++a) {
      if (!sys.is_unit(a)) continue;
      if (wraps(c, a, m) == wraps(c, m - a, m)) {
        v.record_failure("involution", "n=" + std::to_string(n) + " a=" + std::to_string(a));
      }
    }
  }
  return result;
}

}  // namespace digitbin
