#include "digitbin/slices.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "digitbin/collision.hpp"
#include "digitbin/error.hpp"

namespace digitbin {

namespace {

using u128 = unsigned __int128;

std::string system_name(const SliceSystem& sys) {
  return "(b=" + std::to_string(sys.b()) + ", lag=" + std::to_string(sys.lag()) + ")";
}

}  // namespace

SliceSystem::SliceSystem(u64 b, unsigned lag) : b_(b), lag_(lag) {
  if (b < 2) throw Error(ErrorCode::invalid_argument, "base must be >= 2");
  if (lag < 1) throw Error(ErrorCode::invalid_argument, "lag must be >= 1");
  if (!checked_pow(b, lag + 1, m_)) {
    throw Error(ErrorCode::overflow, "b^(lag+1) overflows 64 bits for " + system_name(*this));
  }
  block_ = m_ / b;
  if (block_ > kMaxGoodSlices) {
    throw Error(ErrorCode::overflow,
                "good-slice set of size " + std::to_string(block_) + " is too large to enumerate");
  }
  // n = q*b^l + r with leading digit q and r == q (mod b); ascending in (q, r).
  good_.reserve(block_);
  for (u64 q = 0; q < b; ++q) {
    for (u64 r = q; r < block_; r += b) good_.push_back(q * block_ + r);
  }
}

bool SliceSystem::is_good(u64 n) const noexcept {
  return n < m_ && n / block_ == n % b_;
}

bool SliceSystem::is_unit(u64 a) const noexcept {
  return a >= 1 && a < m_ && std::gcd(a, b_) == 1;
}

u64 slice_index(const SliceSystem& sys, u64 p, u64 r) noexcept {
  return static_cast<u64>(static_cast<u128>(sys.m()) * r / p);
}

u64 slice_increment(const SliceSystem& sys, u64 a, u64 n) noexcept {
  const u128 na = static_cast<u128>(n) * a;
  return static_cast<u64>((na + a) / sys.m() - na / sys.m());
}

i64 deviation_formula(const SliceSystem& sys, u64 a) {
  if (a == 0 || a >= sys.m()) {
    throw Error(ErrorCode::invalid_argument,
                "residue " + std::to_string(a) + " outside 1.." + std::to_string(sys.m() - 1));
  }
  if (!sys.is_unit(a)) {
    throw Error(ErrorCode::not_unit,
                std::to_string(a) + " is not a unit modulo " + std::to_string(sys.m()));
  }
  i64 total = 0;
  for (u64 n : sys.good_slices()) total += static_cast<i64>(slice_increment(sys, a, n));
  return total - 1 - static_cast<i64>(a / sys.b());
}

i64 deviation_direct(const SliceSystem& sys, u64 p) {
  if (std::gcd(p, sys.b()) != 1) {
    throw Error(ErrorCode::not_coprime,
                "gcd(" + std::to_string(p) + ", " + std::to_string(sys.b()) + ") != 1");
  }
  if (p <= sys.m()) {
    throw Error(ErrorCode::too_small,
                std::to_string(p) + " must exceed m = " + std::to_string(sys.m()));
  }
  const DigitSystem digits(p, sys.b());
  const Modulus mod(p);
  const u64 g = pow_mod(sys.b() % p, sys.lag(), mod);
  return static_cast<i64>(collision_count_linear(digits, g)) -
         static_cast<i64>(digits.bin_size());
}

ClassTable::ClassTable(SliceSystem sys) : sys_(std::move(sys)) {
  if (sys_.m() > kMaxModulus) {
    throw Error(ErrorCode::overflow, "class table modulus " + std::to_string(sys_.m()) +
                                         " exceeds " + std::to_string(kMaxModulus));
  }
  mask_.assign(sys_.m(), 0);
  values_.assign(sys_.m(), 0);
  for (u64 a = 1; a < sys_.m(); ++a) {
    if (!sys_.is_unit(a)) continue;
    mask_[a] = 1;
    values_[a] = deviation_formula(sys_, a);
    units_.push_back(a);
  }
}

i64 ClassTable::at(u64 a) const {
  if (!contains(a)) {
    throw Error(ErrorCode::not_unit,
                std::to_string(a) + " is not a unit modulo " + std::to_string(sys_.m()));
  }
  return values_[a];
}

ClassTable class_table(const SliceSystem& sys) { return ClassTable(sys); }

}  // namespace digitbin
