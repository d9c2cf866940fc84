#include "digitbin/collision.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "digitbin/error.hpp"

namespace digitbin {

namespace {

using u128 = unsigned __int128;

// Run-grouped counting wins once runs average this many residues.
constexpr u64 kRunLengthCutoff = 32;

void require_unit(const DigitSystem& sys, u64 g) {
  if (g == 0 || g >= sys.p() || std::gcd(g, sys.p()) != 1) {
    throw Error(ErrorCode::invalid_argument,
                "multiplier " + std::to_string(g) + " is not a unit modulo " +
                    std::to_string(sys.p()));
  }
}

void require_prime(const DigitSystem& sys) {
  if (!is_prime(sys.p())) {
    throw Error(ErrorCode::not_prime, std::to_string(sys.p()) + " is not prime");
  }
}

// ceil(num / den) for a 128-bit numerator.
u64 ceil_div(u128 num, u64 den) {
  return static_cast<u64>((num + den - 1) / den);
}

// #{x in [0, n] : x == r (mod step)} for r < step.
u64 count_upto(u64 n, u64 r, u64 step) {
  return n < r ? 0 : (n - r) / step + 1;
}

}  // namespace

DigitSystem::DigitSystem(u64 p, u64 b) : p_(p), b_(b) {
  if (b < 2) {
    throw Error(ErrorCode::invalid_argument, "base must be >= 2, got " + std::to_string(b));
  }
  if (p <= b) {
    throw Error(ErrorCode::invalid_argument,
                "modulus " + std::to_string(p) + " must exceed base " + std::to_string(b));
  }
  if (std::gcd(p, b) != 1) {
    throw Error(ErrorCode::not_coprime, "gcd(" + std::to_string(p) + ", " +
                                            std::to_string(b) + ") != 1");
  }
}

u64 digit(const DigitSystem& sys, u64 r) noexcept {
  return static_cast<u64>(static_cast<u128>(sys.b()) * r / sys.p());
}

std::vector<Bin> bins(const DigitSystem& sys) {
  const u64 p = sys.p();
  const u64 b = sys.b();
  std::vector<Bin> out;
  out.reserve(b);
  for (u64 d = 0; d < b; ++d) {
    const u64 lo = std::max<u64>(1, ceil_div(static_cast<u128>(d) * p, b));
    const u64 hi = d + 1 == b ? p - 1 : ceil_div(static_cast<u128>(d + 1) * p, b) - 1;
    out.push_back({d, lo, hi});
  }
  return out;
}

u64 collision_count_brute(const DigitSystem& sys, u64 g) {
  require_unit(sys, g);
  const Modulus mod = sys.modulus();
  u64 count = 0;
  for (u64 r = 1; r < sys.p(); ++r) {
    if (digit(sys, r) == digit(sys, mul_mod(g, r, mod))) ++count;
  }
  return count;
}

namespace detail {

u64 linear_count_scan(const DigitSystem& sys, u64 g) {
  require_unit(sys, g);
  const u64 p = sys.p();
  const u64 b = sys.b();
  const u64 gap = p - g;  // y + g >= p  <=>  y >= p - g
  const u64 gb = g % b;
  const u64 pb = p % b;
  u64 y = 0, xm = 0, ym = 0, count = 0;
  for (u64 x = 1; x < p; ++x) {
    xm = xm + 1 == b ? 0 : xm + 1;
    ym += gb;
    if (ym >= b) ym -= b;
    if (y >= gap) {
      y -= gap;
      ym = ym >= pb ? ym - pb : ym + b - pb;
    } else {
      y += g;
    }
    count += xm == ym;
  }
  return count;
}

u64 linear_count_runs(const DigitSystem& sys, u64 g) {
  require_unit(sys, g);
  const u64 p = sys.p();
  const u64 b = sys.b();
  const u64 coeff = (1 + b - g % b) % b;  // (1 - g) mod b
  const u64 d = std::gcd(coeff, b);
  const u64 step = b / d;
  const u64 coeff_inv = step == 1 ? 0 : inv_mod((coeff / d) % step, Modulus(step));
  const u64 pb = p % b;

  u64 count = 0;
  u64 kp_mod_b = 0;  // k*p mod b
  u64 lo = 1;
  for (u64 k = 0; k < g; ++k) {
    const u64 hi = std::min(p - 1, ceil_div(static_cast<u128>(k + 1) * p, g) - 1);
    const u64 rhs = (b - kp_mod_b) % b;  // -k*p mod b
    if (lo <= hi && rhs % d == 0) {
      const u64 r = static_cast<u64>(static_cast<u128>(rhs / d) * coeff_inv % step);
      count += count_upto(hi, r, step) - count_upto(lo - 1, r, step);
    }
    lo = hi + 1;
    kp_mod_b += pb;
    if (kp_mod_b >= b) kp_mod_b -= b;
  }
  return count;
}

}  // namespace detail

u64 collision_count_linear(const DigitSystem& sys, u64 g) {
  if (g <= sys.p() / kRunLengthCutoff) return detail::linear_count_runs(sys, g);
  return detail::linear_count_scan(sys, g);
}

std::optional<u64> first_collision(const DigitSystem& sys, u64 g) {
  require_unit(sys, g);
  const u64 p = sys.p();
  const u64 b = sys.b();
  const u64 gap = p - g;
  u64 y = 0;
  for (u64 x = 1; x < p; ++x) {
    y = y >= gap ? y - gap : y + g;
    if (x % b == y % b) return x;
  }
  return std::nullopt;
}

u64 gate_parameter(const DigitSystem& sys, u64 g) {
  require_prime(sys);
  require_unit(sys, g);
  if (g == 1) {
    throw Error(ErrorCode::gate_undefined, "gate parameter is undefined for g = 1");
  }
  const Modulus mod = sys.modulus();
  const u64 one_minus_g = sys.p() + 1 - g;
  return mul_mod(sys.b(), inv_mod(one_minus_g, mod), mod);
}

std::vector<GateMember> gate_family(const DigitSystem& sys) {
  require_prime(sys);
  const Modulus mod = sys.modulus();
  std::vector<GateMember> family;
  family.reserve(sys.b() - 1);
  for (u64 u = 1; u < sys.b(); ++u) {
    const u64 c = sys.b() - u;
    family.push_back({u, c, mul_mod(sys.p() - u, inv_mod(c, mod), mod)});
  }
  return family;
}

CollisionProfile collision_profile(const DigitSystem& sys, u64 g) {
  require_prime(sys);
  const u64 count = collision_count_linear(sys, g);
  std::optional<u64> c;
  if (g != 1) c = gate_parameter(sys, g);
  return {g, count, c, count == 0};
}

GateReport verify_gate(const DigitSystem& sys, const GateOptions& options) {
  require_prime(sys);
  GateReport report;
  report.verification.check = "gate";
  report.family = gate_family(sys);

  const u64 p = sys.p();
  std::vector<u64> family_g;
  for (const auto& m : report.family) family_g.push_back(m.g);
  std::sort(family_g.begin(), family_g.end());

  const bool distinct =
      std::adjacent_find(family_g.begin(), family_g.end()) == family_g.end();
  const bool has_identity = std::binary_search(family_g.begin(), family_g.end(), u64{1});
  ++report.verification.checked;
  if (family_g.size() != sys.b() - 1 || !distinct || has_identity) {
    report.verification.record_failure(
        "family-size", "size=" + std::to_string(family_g.size()) +
                           " distinct=" + (distinct ? "yes" : "no") +
                           " contains_1=" + (has_identity ? "yes" : "no"));
  }

  for (const auto& m : report.family) {
    ++report.verification.checked;
    const u64 brute = collision_count_brute(sys, m.g);
    const u64 linear = collision_count_linear(sys, m.g);
    if (brute != 0 || linear != 0) {
      report.verification.record_failure(
          "family-collision", "g=" + std::to_string(m.g) + " u=" + std::to_string(m.u) +
                                  " count=" + std::to_string(brute));
    }
  }

  auto check_outside = [&](u64 g) {
    ++report.verification.checked;
    ++report.outside_checked;
    if (!first_collision(sys, g)) {
      report.verification.record_failure("outside-deranging",
                                         "g=" + std::to_string(g) + " count=0");
    }
  };

  report.exhaustive = p <= options.exhaustive_threshold;
  if (report.exhaustive) {
    for (u64 g = 1; g < p; ++g) {
      if (!std::binary_search(family_g.begin(), family_g.end(), g)) check_outside(g);
    }
  } else {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(p >> 32),
                      static_cast<std::uint32_t>(sys.b())};
    std::mt19937_64 rng(seq);
    const u64 outside = p - 1 - family_g.size();
    const u64 target = std::min<u64>(options.samples, outside);
    while (report.outside_checked < target) {
      const u64 g = 1 + rng() % (p - 1);
      if (!std::binary_search(family_g.begin(), family_g.end(), g)) check_outside(g);
    }
  }
  return report;
}

}  // namespace digitbin
