#include "digitbin/symmetry.hpp"

#include <gtest/gtest.h>

#include <random>

#include "digitbin/error.hpp"
#include "support/oracles.hpp"

namespace digitbin {
namespace {

struct Grid {
  u64 b;
  unsigned lag;
};

std::vector<Grid> full_grid() {
  std::vector<Grid> out;
  for (u64 b = 2; b <= 12; ++b) {
    for (unsigned lag = 1; lag <= 2; ++lag) out.push_back({b, lag});
  }
  return out;
}

TEST(Rational, Reduction) {
  EXPECT_EQ(Rational::reduced(-3, 6), (Rational{-1, 2}));
  EXPECT_EQ(Rational::reduced(20, -40), (Rational{-1, 2}));
  EXPECT_EQ(Rational::reduced(0, 5), (Rational{0, 1}));
  EXPECT_EQ(Rational::reduced(-21, 42).str(), "-1/2");
  EXPECT_THROW(Rational::reduced(1, 0), Error);
}

TEST(Reflection, SmallSystem) {
  const auto t = class_table(SliceSystem(3, 1));
  EXPECT_EQ(t.at(1) + t.at(8), -1);
  const auto v = check_reflection(t);
  EXPECT_TRUE(v.passed());
  EXPECT_EQ(v.checked, 3u);
}

TEST(Reflection, DecimalPairs) {
  const auto v = check_reflection(class_table(SliceSystem(10, 1)));
  EXPECT_TRUE(v.passed());
  EXPECT_EQ(v.checked, 20u);
}

TEST(Reflection, WholeGrid) {
  for (auto [b, lag] : full_grid()) {
    const auto t = class_table(SliceSystem(b, lag));
    for (u64 a : t.units()) {
      ASSERT_TRUE(t.contains(t.modulus() - a));
      ASSERT_EQ(t.at(a) + t.at(t.modulus() - a), -1) << b << " " << lag << " " << a;
    }
    ASSERT_TRUE(check_reflection(t).passed());
  }
}

TEST(GrandMean, Examples) {
  const auto t3 = class_table(SliceSystem(3, 1));
  EXPECT_EQ(unit_sum(t3), -3);
  EXPECT_EQ(grand_mean(t3), (Rational{-1, 2}));
  const auto t10 = class_table(SliceSystem(10, 1));
  EXPECT_EQ(unit_sum(t10), -20);
  EXPECT_EQ(t10.unit_count(), 40u);
  const auto t7 = class_table(SliceSystem(7, 1));
  EXPECT_EQ(unit_sum(t7), -21);
  EXPECT_EQ(t7.unit_count(), 42u);
}

TEST(GrandMean, WholeGrid) {
  for (auto [b, lag] : full_grid()) {
    const auto t = class_table(SliceSystem(b, lag));
    ASSERT_EQ(2 * unit_sum(t), -static_cast<i64>(euler_phi(t.modulus())));
    ASSERT_EQ(grand_mean(t), (Rational{-1, 2}));
  }
}

TEST(WrappingSet, Examples) {
  const SliceSystem s(3, 1);
  EXPECT_EQ(wrapping_set_size(s, 0), 0u);
  EXPECT_EQ(wrapping_set_size(s, 8), 6u);
  EXPECT_EQ(wrapping_set_size(s, 4), 3u);
  try {
    wrapping_set_size(s, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_good_slice);
  }
}

TEST(WrappingSet, MatchesOracle) {
  for (auto [b, lag] : full_grid()) {
    const SliceSystem s(b, lag);
    for (u64 n : s.good_slices()) ASSERT_EQ(wrapping_set_size(s, n), oracle::wrapping_size(s.m(), n));
  }
}

TEST(HalfGroup, SmallSystems) {
  const auto r3 = check_half_group(SliceSystem(3, 1));
  EXPECT_TRUE(r3.verification.passed());
  ASSERT_EQ(r3.profile.entries.size(), 3u);
  EXPECT_EQ(r3.profile.entries[1].n, 4u);
  EXPECT_EQ(r3.profile.entries[1].size, 3u);
  EXPECT_TRUE(r3.profile.entries[0].trivial);
  EXPECT_TRUE(r3.profile.entries[2].trivial);

  const auto r10 = check_half_group(SliceSystem(10, 1));
  EXPECT_TRUE(r10.verification.passed());
  int nontrivial = 0;
  for (const auto& e : r10.profile.entries) {
    if (e.trivial) continue;
    ++nontrivial;
    EXPECT_EQ(e.size, 20u);
  }
  EXPECT_EQ(nontrivial, 8);

  const auto r5 = check_half_group(SliceSystem(5, 2));
  EXPECT_TRUE(r5.verification.passed());
  EXPECT_EQ(r5.profile.phi, 100u);
  for (const auto& e : r5.profile.entries) {
    if (!e.trivial) EXPECT_EQ(e.size, 50u);
  }
}

TEST(HalfGroup, WholeGrid) {
  for (auto [b, lag] : full_grid()) {
    const auto r = check_half_group(SliceSystem(b, lag));
    ASSERT_TRUE(r.verification.passed()) << b << " " << lag;
    ASSERT_EQ(r.profile.entries.front().size, 0u);
    ASSERT_EQ(r.profile.entries.back().size, r.profile.phi);
  }
}

// Slice-level identities behind the reflection pairing.
TEST(SliceIdentities, EndpointsAndInteriorComplement) {
  for (auto [b, lag] : full_grid()) {
    const SliceSystem s(b, lag);
    const u64 m = s.m();
    for (u64 a = 1; a < m; ++a) {
      if (!s.is_unit(a)) continue;
      ASSERT_EQ(slice_increment(s, a, 0), 0u);
      ASSERT_EQ(slice_increment(s, a, m - 1), 1u);
      ASSERT_EQ(a / b + (m - a) / b, s.block() - 1);
    }
    if (m > 200) continue;
    for (u64 a = 1; a < m; ++a) {
      if (!s.is_unit(a)) continue;
      for (u64 n = 1; n + 2 <= m; ++n) {
        ASSERT_EQ(slice_increment(s, m - a, n), 1 - slice_increment(s, a, n));
      }
    }
  }
}

TEST(SliceIdentities, InteriorComplementRandomizedLargeModuli) {
  std::mt19937_64 rng(17);
  for (auto [b, lag] : {Grid{10, 4}, Grid{7, 5}, Grid{12, 4}, Grid{3, 9}}) {
    const SliceSystem s(b, lag);
    const u64 m = s.m();
    for (int i = 0; i < 20000; ++i) {
      const u64 a = 1 + rng() % (m - 1);
      if (!s.is_unit(a)) continue;
      const u64 n = 1 + rng() % (m - 2);
      ASSERT_EQ(slice_increment(s, m - a, n), 1 - slice_increment(s, a, n));
    }
  }
}

}  // namespace
}  // namespace digitbin
