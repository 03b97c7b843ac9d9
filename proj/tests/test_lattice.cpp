#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "hfold/lattice.hpp"

using namespace hfold;

namespace {

LatticePoint random_point(std::mt19937_64& rng, Int d, Int lo, Int hi) {
  std::uniform_int_distribution<Int> c(lo, hi);
  LatticePoint x(d);
  for (Int& v : x) v = c(rng);
  return x;
}

LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

// Ordered h-tuples of N0^d points summing to n, by direct recursion.
std::size_t brute_tuples(const LatticePoint& n, Int h) {
  if (h == 1) return 1;
  std::size_t total = 0;
  LatticePoint first(n.size(), 0);
  while (true) {
    LatticePoint rest(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) rest[i] = n[i] - first[i];
    total += brute_tuples(rest, h - 1);
    std::size_t i = 0;
    while (i < n.size() && first[i] == n[i]) first[i++] = 0;
    if (i == n.size()) break;
    ++first[i];
  }
  return total;
}

}  // namespace

TEST(LatticeTest, NormRay) {
  const WindowedLatticeSet r = WindowedLatticeSet::norm_ray(2, 3, 6);
  EXPECT_TRUE(r.contains({3, 0}));
  EXPECT_FALSE(r.contains({2, 2}));
  EXPECT_TRUE(r.contains({100, -100}));
  const WindowedLatticeSet one = WindowedLatticeSet::norm_ray(2, 1, 4);
  EXPECT_FALSE(one.contains({0, 0}));
  EXPECT_EQ(one.inside_count(), 9u * 9u - 1u);
  EXPECT_EQ(WindowedLatticeSet::norm_ray(1, 3, 5).inside_count(), 6u);
  EXPECT_THROW(WindowedLatticeSet::norm_ray(1, 6, 5), std::invalid_argument);
  EXPECT_EQ(r.ray_radius(), 3);
}

TEST(LatticeTest, WitnessExamples) {
  EXPECT_EQ(witness_decompose({0}, 2, 3), (std::vector<LatticePoint>{{3}, {-3}}));
  EXPECT_EQ(witness_decompose({0, 0}, 3, 2), (std::vector<LatticePoint>{{4, 0}, {-2, 0}, {-2, 0}}));
  EXPECT_EQ(witness_decompose({-1, 5}, 2, 4), (std::vector<LatticePoint>{{-5, 5}, {4, 0}}));
  EXPECT_THROW(witness_decompose({1}, 1, 3), std::invalid_argument);
}

TEST(LatticeProperty, WitnessesSumAndClearNorm) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<Int> dd(1, 3), hd(2, 4), qd(1, 10);
  for (int i = 0; i < 500; ++i) {
    const Int d = dd(rng), h = hd(rng), q = qd(rng);
    const LatticePoint x = random_point(rng, d, -50, 50);
    const std::vector<LatticePoint> parts = witness_decompose(x, h, q);
    ASSERT_EQ(static_cast<Int>(parts.size()), h);
    LatticePoint sum(d, 0);
    for (const LatticePoint& p : parts) {
      ASSERT_GE(norm_inf(p), q);
      sum = add(sum, p);
    }
    ASSERT_EQ(sum, x);
  }
}

TEST(LatticeProperty, FiniteSumsetMatchesPairs) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> count(0, 12);
  for (int i = 0; i < 200; ++i) {
    const Int d = 1 + i % 2;
    std::vector<LatticePoint> ps, ts;
    for (int k = count(rng); k > 0; --k) ps.push_back(random_point(rng, d, -5, 5));
    for (int k = count(rng); k > 0; --k) ts.push_back(random_point(rng, d, -4, 4));
    const WindowedLatticeSet s = WindowedLatticeSet::finite(d, 5, ps);
    const WindowedLatticeSet t = WindowedLatticeSet::finite(d, 4, ts);
    std::set<LatticePoint> expect;
    for (const LatticePoint& a : ps)
      for (const LatticePoint& b : ts) expect.insert(add(a, b));
    const WindowedLatticeSet sum = windowed_sumset(s, t, 9);
    const std::vector<LatticePoint> got = sum.points();
    ASSERT_EQ(std::set<LatticePoint>(got.begin(), got.end()), expect);
    ASSERT_TRUE(sum.is_finite());
  }
}

TEST(LatticeTest, SumsetIdentityAndErrors) {
  const WindowedLatticeSet s = WindowedLatticeSet::finite(2, 3, {{1, 2}, {-3, 0}, {0, 0}});
  const WindowedLatticeSet zero = WindowedLatticeSet::finite(2, 0, {{0, 0}});
  EXPECT_TRUE(equals(windowed_sumset(s, zero, 3), s));
  EXPECT_THROW(windowed_sumset(s, s, 3), std::invalid_argument);
  EXPECT_THROW(windowed_sumset(s, WindowedLatticeSet::finite(1, 2, {{0}}), 5), std::invalid_argument);
  EXPECT_THROW(windowed_sumset(WindowedLatticeSet::norm_ray(2, 3, 3),
                               WindowedLatticeSet::finite(2, 3, {{3, 3}}), 4),
               std::invalid_argument);
}

TEST(LatticeTest, NormRaySumsAreEverything) {
  const WindowedLatticeSet a =
      WindowedLatticeSet::finite(2, 6, {{0, 0}, {1, 1}}).with_union(WindowedLatticeSet::norm_ray(2, 4, 6));
  const WindowedLatticeSet two = windowed_hfold(a, 2, 10);
  EXPECT_TRUE(equals(two, WindowedLatticeSet::all(2, 3)));
  EXPECT_TRUE(equals(windowed_hfold(WindowedLatticeSet::norm_ray(3, 2, 2), 3, 2), WindowedLatticeSet::all(3, 1)));
}

TEST(LatticeTest, RayPlusFiniteIsExactInside) {
  const WindowedLatticeSet ray = WindowedLatticeSet::norm_ray(1, 3, 4);
  const WindowedLatticeSet point = WindowedLatticeSet::finite(1, 1, {{1}});
  const WindowedLatticeSet sum = windowed_sumset(ray, point, 8);
  for (Int x = -20; x <= 20; ++x) EXPECT_EQ(sum.contains({x}), x - 1 >= 3 || x - 1 <= -3) << x;
}

TEST(LatticeProperty, SymbolicAllAgreesWithBruteForce) {
  for (Int d = 1; d <= 2; ++d) {
    for (Int w : {Int(20), Int(40), Int(60)}) {
      if (d == 2 && w > 40) continue;
      for (Int q : {Int(1), Int(3), w / 2}) {
        const WindowedLatticeSet ray = WindowedLatticeSet::norm_ray(d, q, w);
        ASSERT_TRUE(equals(windowed_hfold(ray, 2, w), WindowedLatticeSet::all(d, w)));
        // Treat the in-window part as finite and sum it directly.
        const WindowedLatticeSet fin = WindowedLatticeSet::finite(d, w, ray.points());
        const WindowedLatticeSet brute = windowed_sumset(fin, fin, 2 * w);
        LatticePoint x(d, -w / 2);
        while (true) {
          ASSERT_TRUE(brute.contains(x)) << d << ' ' << w << ' ' << q;
          Int i = 0;
          while (i < d && x[i] == w / 2) x[i++] = -w / 2;
          if (i == d) break;
          ++x[i];
        }
      }
    }
  }
}

TEST(CountN0dTest, Examples) {
  EXPECT_EQ(count_reps_n0d({4, 4}, 3), BigInt(225));
  EXPECT_EQ(count_reps_n0d({0, 0, 0}, 4), BigInt(1));
  EXPECT_EQ(count_reps_n0d({3}, 2), BigInt(4));
  EXPECT_THROW(count_reps_n0d({1, -1}, 2), std::invalid_argument);
}

TEST(CountN0dProperty, MatchesEnumeration) {
  for (Int d = 1; d <= 2; ++d)
    for (Int h = 1; h <= 3; ++h) {
      LatticePoint n(d, 0);
      while (true) {
        ASSERT_EQ(count_reps_n0d(n, h), BigInt(brute_tuples(n, h)));
        Int i = 0;
        while (i < d && n[i] == 6) n[i++] = 0;
        if (i == d) break;
        ++n[i];
      }
    }
}

TEST(BoxSetTest, SumTruncatesToBox) {
  const BoxSet s = BoxSet::from_points(2, 5, {{0, 0}, {3, 4}, {5, 1}});
  const BoxSet two = s.hfold(2);
  std::set<LatticePoint> want;
  for (const LatticePoint& a : s.points())
    for (const LatticePoint& b : s.points()) {
      const LatticePoint c = add(a, b);
      if (c[0] <= 5 && c[1] <= 5) want.insert(c);
    }
  const std::vector<LatticePoint> got = two.points();
  EXPECT_EQ(std::set<LatticePoint>(got.begin(), got.end()), want);
  EXPECT_THROW(BoxSet::from_points(1, 5, {{6}}), std::invalid_argument);
}

TEST(StableBoxTest, ConstantFamily) {
  const BoxSet a = BoxSet::from_points(1, 30, {{0}, {2}, {7}});
  const StableBoxResult r = theorem2_check([&](Int) { return a; }, 3, 10, a);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.stable_points, 31u);
}

TEST(StableBoxTest, RejectsIncreasingFamily) {
  auto rule = [](Int q) {
    BoxSet s(1, 20);
    for (Int x = 0; x <= std::min<Int>(q, 20); ++x) s.insert({x});
    return s;
  };
  EXPECT_THROW(theorem2_check(rule, 2, 5), std::invalid_argument);
}

TEST(StableBoxProperty, RandomFiltrations) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 60; ++i) {
    const Int d = 1 + i % 2, w = d == 1 ? 80 : 15, q_max = 20;
    std::uniform_int_distribution<Int> coord(0, w), level(1, q_max + 5);
    BoxSet a(d, w);
    std::vector<std::pair<LatticePoint, Int>> fading;
    for (int k = 0; k < 8; ++k) a.insert(random_point(rng, d, 0, w));
    for (int k = 0; k < 30; ++k) fading.push_back({random_point(rng, d, 0, w), level(rng)});
    auto rule = [&](Int q) {
      BoxSet s = a;
      for (const auto& [p, lv] : fading)
        if (q <= lv) s.insert(p);
      return s;
    };
    const Int h = 1 + i % 3;
    const StableBoxResult r = theorem2_check(rule, h, q_max, a);
    ASSERT_TRUE(r.holds) << i;
    ASSERT_LE(r.stable_points, r.box_points);
  }
}
