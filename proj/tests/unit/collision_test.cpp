#include "digitbin/collision.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "digitbin/error.hpp"
#include "support/oracles.hpp"

namespace digitbin {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::invalid_argument;
}

const std::vector<u64> kBases = {2, 3, 5, 7, 10, 12};

TEST(DigitSystem, Validation) {
  EXPECT_EQ(code_of([] { DigitSystem(18, 3); }), ErrorCode::not_coprime);
  EXPECT_EQ(code_of([] { DigitSystem(3, 3); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { DigitSystem(19, 1); }), ErrorCode::invalid_argument);
  const DigitSystem sys(19, 3);
  EXPECT_EQ(sys.bin_size(), 6u);
}

TEST(Digit, SmallSystem) {
  const DigitSystem sys(19, 3);
  EXPECT_EQ(digit(sys, 1), 0u);
  EXPECT_EQ(digit(sys, 7), 1u);
  EXPECT_EQ(digit(sys, 18), 2u);
  for (u64 r = 1; r < 19; ++r) EXPECT_EQ(digit(sys, r), oracle::digit(19, 3, r));
}

TEST(Digit, NoOverflowNearTop) {
  const u64 p = 18446744073709551557u;
  const DigitSystem sys(p, 10);
  EXPECT_EQ(digit(sys, p - 1), 9u);
  EXPECT_EQ(digit(sys, 1), 0u);
}

TEST(Bins, Examples) {
  EXPECT_EQ(bins(DigitSystem(19, 3)),
            (std::vector<Bin>{{0, 1, 6}, {1, 7, 12}, {2, 13, 18}}));
  const auto b17 = bins(DigitSystem(17, 10));
  ASSERT_EQ(b17.size(), 10u);
  u64 total = 0;
  for (const auto& bin : b17) {
    EXPECT_TRUE(bin.size() == 1 || bin.size() == 2);
    total += bin.size();
  }
  EXPECT_EQ(total, 16u);
}

TEST(Bins, PartitionProperty) {
  for (u64 p : primes_in_range(3, 600)) {
    for (u64 b : {2u, 3u, 5u, 7u, 10u, 12u, 16u}) {
      if (p <= b || std::gcd(p, b) != 1) continue;
      const DigitSystem sys(p, b);
      const auto bs = bins(sys);
      ASSERT_EQ(bs.size(), b);
      u64 next = 1;
      for (const auto& bin : bs) {
        ASSERT_EQ(bin.lo, next);
        ASSERT_TRUE(bin.size() == sys.bin_size() || bin.size() == sys.bin_size() + 1);
        for (u64 r = bin.lo; r <= bin.hi; ++r) ASSERT_EQ(digit(sys, r), bin.digit);
        next = bin.hi + 1;
      }
      ASSERT_EQ(next, p);
    }
  }
}

TEST(CollisionCount, Examples) {
  const DigitSystem sys(19, 3);
  EXPECT_EQ(collision_count_brute(sys, 1), 18u);
  EXPECT_EQ(collision_count_brute(sys, 3), 6u);
  EXPECT_EQ(oracle::collision_count(19, 3, 3), 6u);
  EXPECT_EQ(collision_count_linear(sys, 3), 6u);
  EXPECT_EQ(collision_count_linear(sys, 1), 18u);
  const DigitSystem s17(17, 10);
  for (const auto& m : gate_family(s17)) EXPECT_EQ(collision_count_brute(s17, m.g), 0u);
}

TEST(CollisionCount, RejectsNonUnits) {
  const DigitSystem sys(21, 2);
  EXPECT_THROW(collision_count_brute(sys, 7), Error);
  EXPECT_THROW(collision_count_linear(sys, 0), Error);
  EXPECT_THROW(collision_count_linear(sys, 21), Error);
}

TEST(CollisionCount, BruteMatchesOracle) {
  for (u64 p : {11u, 19u, 25u, 49u, 101u}) {
    for (u64 b : kBases) {
      if (p <= b || std::gcd(p, b) != 1) continue;
      const DigitSystem sys(p, b);
      for (u64 g = 1; g < p; ++g) {
        if (std::gcd(g, p) != 1) continue;
        ASSERT_EQ(collision_count_brute(sys, g), oracle::collision_count(p, b, g));
      }
    }
  }
}

TEST(CollisionCount, LinearPathsMatchBruteExhaustively) {
  for (u64 p : primes_in_range(3, 300)) {
    for (u64 b : kBases) {
      if (p <= b) continue;
      const DigitSystem sys(p, b);
      for (u64 g = 1; g < p; ++g) {
        const u64 brute = collision_count_brute(sys, g);
        ASSERT_EQ(detail::linear_count_scan(sys, g), brute) << p << " " << b << " " << g;
        ASSERT_EQ(detail::linear_count_runs(sys, g), brute) << p << " " << b << " " << g;
        ASSERT_EQ(collision_count_linear(sys, g), brute);
      }
    }
  }
}

TEST(CollisionCount, LinearPathsMatchOnRandomComposites) {
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 3000) {
    const u64 p = 20 + rng() % 5000;
    const u64 b = 2 + rng() % 15;
    if (p <= b || std::gcd(p, b) != 1) continue;
    const u64 g = 1 + rng() % (p - 1);
    if (std::gcd(g, p) != 1) continue;
    const DigitSystem sys(p, b);
    const u64 brute = oracle::collision_count(p, b, g);
    ASSERT_EQ(detail::linear_count_scan(sys, g), brute) << p << " " << b << " " << g;
    ASSERT_EQ(detail::linear_count_runs(sys, g), brute) << p << " " << b << " " << g;
    ++done;
  }
}

TEST(CollisionCount, RunsMatchScanForLargeModuli) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 40; ++i) {
    const u64 p = 1000000 + rng() % 4000000;
    const u64 b = 2 + rng() % 30;
    if (std::gcd(p, b) != 1) continue;
    const u64 g = 1 + rng() % 5000;
    if (std::gcd(g, p) != 1) continue;
    const DigitSystem sys(p, b);
    ASSERT_EQ(detail::linear_count_runs(sys, g), detail::linear_count_scan(sys, g));
  }
}

TEST(CollisionCount, IdentityCollidesEverywhere) {
  for (u64 p : primes_in_range(13, 400)) {
    for (u64 b : kBases) {
      const DigitSystem sys(p, b);
      ASSERT_EQ(collision_count_linear(sys, 1), p - 1);
    }
  }
}

TEST(FirstCollision, AgreesWithCountZero) {
  for (u64 p : primes_in_range(13, 200)) {
    const DigitSystem sys(p, 10);
    for (u64 g = 1; g < p; ++g) {
      const auto x = first_collision(sys, g);
      ASSERT_EQ(x.has_value(), collision_count_brute(sys, g) > 0);
      if (x) ASSERT_EQ(*x % 10, g * *x % p % 10);
    }
  }
}

TEST(GateParameter, Examples) {
  const DigitSystem sys(17, 10);
  EXPECT_EQ(gate_parameter(sys, 8), 1u);
  EXPECT_EQ(gate_parameter(sys, 16), 5u);
  EXPECT_EQ(code_of([&] { gate_parameter(sys, 1); }), ErrorCode::gate_undefined);
  EXPECT_EQ(code_of([] { gate_parameter(DigitSystem(21, 10), 2); }), ErrorCode::not_prime);
}

TEST(GateParameter, SolvesDefiningCongruence) {
  for (u64 p : primes_in_range(13, 500)) {
    for (u64 b : kBases) {
      const DigitSystem sys(p, b);
      for (u64 g = 2; g < p; ++g) {
        const u64 c = gate_parameter(sys, g);
        ASSERT_GE(c, 1u);
        ASSERT_LT(c, p);
        ASSERT_EQ(c * (p + 1 - g) % p, b);
        ASSERT_NE(c, b);
      }
    }
  }
}

// Zero count exactly when the gate parameter lands in 1..b-1.
TEST(GateParameter, MembershipCriterion) {
  for (u64 p : primes_in_range(13, 400)) {
    for (u64 b : kBases) {
      const DigitSystem sys(p, b);
      for (u64 g = 2; g < p; ++g) {
        const bool zero = collision_count_linear(sys, g) == 0;
        ASSERT_EQ(zero, gate_parameter(sys, g) < b) << p << " " << b << " " << g;
      }
    }
  }
}

TEST(GateFamily, Examples) {
  const auto fam = gate_family(DigitSystem(17, 10));
  ASSERT_EQ(fam.size(), 9u);
  std::set<u64> gs;
  for (const auto& m : fam) {
    gs.insert(m.g);
    EXPECT_EQ(m.c, 10 - m.u);
  }
  EXPECT_EQ(gs.size(), 9u);
  EXPECT_EQ(fam[8].g, 8u);
  EXPECT_EQ(fam[0].g, 15u);
  EXPECT_EQ(fam[4].g, 16u);
  EXPECT_EQ(gate_family(DigitSystem(41, 7)).size(), 6u);
  EXPECT_EQ(code_of([] { gate_family(DigitSystem(15, 4)); }), ErrorCode::not_prime);
}

TEST(GateFamily, EvenBaseContainsMinusOne) {
  for (u64 p : primes_in_range(13, 200)) {
    for (u64 b : {2u, 10u, 12u}) {
      const auto fam = gate_family(DigitSystem(p, b));
      ASSERT_TRUE(std::any_of(fam.begin(), fam.end(),
                              [&](const GateMember& m) { return m.g == p - 1; }));
    }
  }
}

TEST(GateFamily, EqualsBruteForceDerangingSet) {
  for (u64 p : primes_in_range(13, 250)) {
    for (u64 b : kBases) {
      std::vector<u64> fam;
      for (const auto& m : gate_family(DigitSystem(p, b))) fam.push_back(m.g);
      std::sort(fam.begin(), fam.end());
      ASSERT_EQ(fam, oracle::deranging_units(p, b)) << p << " " << b;
    }
  }
}

TEST(CollisionProfile, Fields) {
  const DigitSystem sys(17, 10);
  const auto one = collision_profile(sys, 1);
  EXPECT_EQ(one.count, 16u);
  EXPECT_FALSE(one.gate_parameter.has_value());
  EXPECT_FALSE(one.deranging);
  const auto eight = collision_profile(sys, 8);
  EXPECT_EQ(eight.count, 0u);
  EXPECT_EQ(eight.gate_parameter, 1u);
  EXPECT_TRUE(eight.deranging);
}

TEST(VerifyGate, TableRows) {
  for (auto [p, b] : {std::pair<u64, u64>{17, 10}, {67, 12}, {193, 10}, {41, 7}, {97, 10}}) {
    const auto r = verify_gate(DigitSystem(p, b));
    EXPECT_TRUE(r.passed()) << p;
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.family.size(), b - 1);
    EXPECT_EQ(r.outside_checked, p - 1 - (b - 1));
  }
  EXPECT_THROW(verify_gate(DigitSystem(91, 10)), Error);
}

TEST(VerifyGate, SampledAboveThreshold) {
  GateOptions opt;
  opt.exhaustive_threshold = 100;
  opt.samples = 64;
  const auto r = verify_gate(DigitSystem(100003, 10), opt);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.outside_checked, 64u);
  const auto again = verify_gate(DigitSystem(100003, 10), opt);
  EXPECT_EQ(again.verification.checked, r.verification.checked);
}

TEST(VerifyGate, LargePrimeFamilyStillChecked) {
  GateOptions opt;
  opt.exhaustive_threshold = 0;
  opt.samples = 8;
  const auto r = verify_gate(DigitSystem(1000003, 7), opt);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.family.size(), 6u);
}

}  // namespace
}  // namespace digitbin
