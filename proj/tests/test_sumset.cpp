#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "hfold/sumset.hpp"
#include "test_support.hpp"

using namespace hfold;
using hfold::testing::random_epset;

namespace {

// Ordered h-tuples from S with entries in [-bound, bound] summing to x,
// by plain nested enumeration. Independent of the engine.
std::size_t brute_tuple_count(const EpSet& s, Int h, Int x, Int bound) {
  std::vector<Int> elems;
  for (Int v = -bound; v <= bound; ++v)
    if (s.contains(v)) elems.push_back(v);
  std::map<Int, std::size_t> ways{{0, 1}};
  for (Int k = 0; k < h; ++k) {
    std::map<Int, std::size_t> next;
    for (auto [sum, w] : ways)
      for (Int e : elems) next[sum + e] += w;
    ways.swap(next);
  }
  return ways.count(x) ? ways[x] : 0;
}

}  // namespace

TEST(SumsetTest, IdentityAndSmallSums) {
  std::mt19937_64 rng(5);
  const EpSet zero = EpSet::from_finite({0});
  for (int i = 0; i < 50; ++i) {
    const EpSet s = random_epset(rng);
    EXPECT_EQ(minkowski_sum(zero, s), s);
  }
  EXPECT_EQ(minkowski_sum(EpSet::from_finite({0, 1}), EpSet::from_finite({0, 1})),
            EpSet::from_finite({0, 1, 2}));
  EXPECT_EQ(h_fold(zero, 5), zero);
}

TEST(SumsetTest, EmptyOperandFlagged) {
  SumFlags flags;
  EXPECT_TRUE(minkowski_sum(EpSet::empty(), EpSet::all_integers(), &flags).is_empty());
  EXPECT_TRUE(flags.empty_operand);
  EXPECT_TRUE(brute_sumset_window(EpSet::empty(), EpSet::ray_geq(0), 20).empty());
}

TEST(SumsetTest, SharpSetsSumToZ) {
  for (Int q = 1; q <= 20; ++q) {
    EXPECT_FALSE(h_fold(EpSet::abs_geq(q), 1).is_all());
    for (Int h = 2; h <= 6; ++h) EXPECT_TRUE(h_fold(EpSet::abs_geq(q), h).is_all()) << q << ' ' << h;
  }
}

TEST(SumsetTest, ResidueClassDoubling) {
  const EpSet ones = translate(EpSet::dilate(3), 1);
  EXPECT_EQ(h_fold(ones, 2), translate(EpSet::dilate(3), 2));
}

TEST(SumsetTest, HFoldRejectsZero) {
  EXPECT_THROW(h_fold(EpSet::all_integers(), 0), std::invalid_argument);
}

TEST(SumsetTest, BruteWindowOfSharp) {
  const std::vector<Int> got = brute_sumset_window(EpSet::abs_geq(3), EpSet::abs_geq(3), 50);
  ASSERT_EQ(got.size(), 101u);
  EXPECT_EQ(got.front(), -50);
  EXPECT_EQ(got.back(), 50);
}

TEST(SumsetProperty, OracleEquivalence) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 400; ++i) {
    const EpSet s = random_epset(rng), t = random_epset(rng);
    const EpSet sum = minkowski_sum(s, t);
    const std::vector<Int> brute = brute_sumset_window(s, t, 200);
    std::set<Int> expect(brute.begin(), brute.end());
    for (Int x = -200; x <= 200; ++x)
      ASSERT_EQ(sum.contains(x), expect.count(x) == 1)
          << describe(s) << " + " << describe(t) << " at " << x;
  }
}

TEST(SumsetProperty, CommutativeAssociative) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const EpSet a = random_epset(rng, 6, 15), b = random_epset(rng, 6, 15), c = random_epset(rng, 6, 15);
    ASSERT_EQ(minkowski_sum(a, b), minkowski_sum(b, a));
    ASSERT_EQ(minkowski_sum(minkowski_sum(a, b), c), minkowski_sum(a, minkowski_sum(b, c)));
  }
}

TEST(SumsetProperty, Monotone) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const EpSet a = random_epset(rng, 6, 20);
    const EpSet b = set_union(a, random_epset(rng, 6, 20));
    for (Int h = 1; h <= 3; ++h) ASSERT_TRUE(is_subset(h_fold(a, h), h_fold(b, h)));
  }
}

TEST(RepCountTest, Examples) {
  EXPECT_EQ(count_representations(EpSet::nonnegative_integers(), 3, 4), RepCount::finite(15));
  for (Int h = 1; h <= 4; ++h)
    EXPECT_EQ(count_representations(EpSet::from_finite({0}), h, 0), RepCount::finite(1));
  EXPECT_TRUE(count_representations(EpSet::all_integers(), 2, 0).is_infinite());
  EXPECT_EQ(count_representations(EpSet::all_integers(), 1, 0), RepCount::finite(1));
}

TEST(RepCountTest, BinomialFormula) {
  for (Int h = 1; h <= 5; ++h)
    for (Int n = 0; n <= 25; ++n)
      EXPECT_EQ(count_representations(EpSet::nonnegative_integers(), h, n).value(),
                binomial(n + h - 1, h - 1));
}

TEST(RepCountTest, MixedRaysCanStillBeFinite) {
  // Left ray of multiples of 3, right ray of 1 mod 3: opposite pairs only
  // reach 1 mod 3, so r(2) is finite.
  const EpSet s = normalize({3, 0, 0, {}, {0}, {1}});
  EXPECT_EQ(count_representations(s, 2, 2), RepCount::finite(1));
  EXPECT_TRUE(count_representations(s, 2, 4).is_infinite());
}

TEST(RepCountProperty, MatchesBoundedBruteForce) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<Int> hd(1, 4), xd(-20, 60);
  int checked = 0;
  while (checked < 200) {
    EpSet s = random_epset(rng, 6, 20, 10);
    s = set_intersect(s, EpSet::ray_geq(-8));  // bounded below
    if (s.is_empty()) continue;
    const Int h = hd(rng), x = xd(rng);
    const RepCount c = count_representations(s, h, x);
    ASSERT_FALSE(c.is_infinite());
    // Every summand lies in [-8, x + 8 (h - 1)].
    const Int bound = std::max<Int>(8, x + 8 * (h - 1));
    ASSERT_EQ(c.value(), BigInt(brute_tuple_count(s, h, x, bound))) << describe(s) << ' ' << h << ' ' << x;
    const RepTupleSet e = enumerate_representations(s, h, x, 100000);
    ASSERT_FALSE(e.truncated);
    ASSERT_EQ(BigInt(e.tuples.size()), c.value());
    ++checked;
  }
}

TEST(RepCountProperty, BoundedAboveAgreesWithMirror) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    EpSet s = set_intersect(random_epset(rng, 6, 20, 10), EpSet::ray_geq(-5));
    if (s.is_empty()) continue;
    // Mirror image x -> -x lands in bounded-above sets.
    RawEpSet raw = s.raw();
    RawEpSet mirror{raw.period, -raw.hi, -raw.lo, {}, {}, {}};
    for (Int c : raw.core) mirror.core.push_back(-c);
    for (Int r : raw.right) mirror.left.push_back(floor_mod(-r, raw.period));
    const EpSet m = normalize(mirror);
    for (Int x = -10; x <= 30; x += 3)
      ASSERT_EQ(count_representations(s, 3, x), count_representations(m, 3, -x));
  }
}

TEST(EnumerateTest, Examples) {
  const RepTupleSet pairs = enumerate_representations(EpSet::from_finite({0, 1}), 2, 1, 10);
  EXPECT_EQ(pairs.tuples, (std::vector<std::vector<Int>>{{0, 1}, {1, 0}}));
  EXPECT_FALSE(pairs.truncated);
  const RepTupleSet n0 = enumerate_representations(EpSet::nonnegative_integers(), 3, 4, 100);
  EXPECT_EQ(n0.tuples.size(), 15u);
  const RepTupleSet capped = enumerate_representations(EpSet::nonnegative_integers(), 3, 4, 10);
  EXPECT_EQ(capped.tuples.size(), 10u);
  EXPECT_TRUE(capped.truncated);
}

TEST(EnumerateProperty, InfiniteGivesDistinctTuples) {
  std::mt19937_64 rng(12);
  std::vector<EpSet> sets = {EpSet::all_integers(), EpSet::abs_geq(4), EpSet::dilate(3),
                             normalize({3, 0, 0, {}, {0}, {1}})};
  for (int i = 0; i < 20; ++i) sets.push_back(random_epset(rng, 5, 10));
  for (const EpSet& s : sets) {
    for (Int h = 2; h <= 3; ++h) {
      for (Int x = -4; x <= 4; ++x) {
        if (!count_representations(s, h, x).is_infinite()) continue;
        for (std::size_t cap : {std::size_t(1), std::size_t(50), std::size_t(1000)}) {
          const RepTupleSet e = enumerate_representations(s, h, x, cap);
          ASSERT_EQ(e.tuples.size(), cap);
          ASSERT_TRUE(e.truncated);
          std::set<std::vector<Int>> distinct(e.tuples.begin(), e.tuples.end());
          ASSERT_EQ(distinct.size(), cap);
          for (const auto& tup : e.tuples) {
            Int sum = 0;
            for (Int v : tup) {
              ASSERT_TRUE(s.contains(v));
              sum += v;
            }
            ASSERT_EQ(sum, x);
          }
        }
      }
    }
  }
}
