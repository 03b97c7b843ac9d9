#include <gtest/gtest.h>

#include <random>

#include "hfold/polynomial.hpp"
#include "hfold/rset.hpp"
#include "test_support.hpp"

using namespace hfold;

namespace {

constexpr Int kGrid = 2520;  // lcm(1..9), so 1 + 1/q lies on the grid for q <= 9

IntervalUnion iu(std::vector<std::pair<Rational, Rational>> pieces) {
  std::vector<Interval> ivs;
  for (auto& [a, b] : pieces) ivs.push_back({a, b});
  return IntervalUnion(std::move(ivs));
}

std::vector<std::pair<Rational, Rational>> example_pieces(Int q) { return {{0, 1 + Rational(1, q)}, {3, 4}}; }

IntervalUnion example_member(Int q) { return iu(example_pieces(q)); }

}  // namespace

TEST(PolynomialTest, Arithmetic) {
  const Polynomial q = Polynomial::variable();
  const Polynomial p = q * q + q.scaled(2) - Polynomial::constant(1);
  EXPECT_EQ(p.str(), "q^2+2*q-1");
  EXPECT_EQ(p.eval(BigInt(3)), BigInt(14));
  EXPECT_EQ(p.shifted(1).str(), "q^2+4*q+2");
  EXPECT_EQ(Polynomial().str(), "0");
  EXPECT_EQ((-p).str(), "-q^2-2*q+1");
  EXPECT_EQ((q - q).degree(), -1);
}

TEST(PolynomialTest, GcdAndExactDivision) {
  const Polynomial q = Polynomial::variable(), one = Polynomial::constant(1);
  const Polynomial a = (q + one) * (q - one).scaled(6), b = (q + one).pow(2).scaled(4);
  EXPECT_EQ(polynomial_gcd(a, b), q + one);
  EXPECT_EQ(a.divided_exact(q + one), (q - one).scaled(6));
  EXPECT_THROW(a.divided_exact(q), std::invalid_argument);
  EXPECT_EQ(polynomial_gcd(q.scaled(-3), Polynomial()), q);
  EXPECT_EQ(parse_rational_function("(q^2 - 1)/(q + 1)").str(), "q-1");
  EXPECT_EQ(parse_rational_function("(6*q^3 + 3*q^2)/q^3").str(), "(6*q+3)/q");
  // 2q - 3 changes sign between 1 and 2, so it stays in the denominator.
  EXPECT_EQ(parse_rational_function("(2*q - 3)/(2*q - 3)^2").str(), "(2*q-3)/(4*q^2-12*q+9)");
}

TEST(PolynomialTest, RationalFunctions) {
  const RationalFunction f = parse_rational_function("1 + 1/q");
  EXPECT_EQ(f.eval(1), Rational(2));
  EXPECT_EQ(f.eval(4), Rational(5, 4));
  EXPECT_EQ(f.limit(), Rational(1));
  EXPECT_EQ(f.str(), "(q+1)/q");
  EXPECT_TRUE(parse_rational_function(f.str()).same_as(f));
  EXPECT_THROW(parse_rational_function("q").limit(), std::domain_error);
  EXPECT_THROW(parse_rational_function("1/(q-1)"), CompactFamilyError);
  EXPECT_THROW(parse_rational_function("1 +"), CompactFamilyError);
  const RationalFunction g = parse_rational_function("(2*q^2 - 3)/(q^2 + 1)");
  EXPECT_EQ(g.limit(), Rational(2));
  EXPECT_EQ(parse_rational_function("-1/q").eval(2), Rational(-1, 2));
}

TEST(PolynomialTest, EventualSign) {
  const auto s = parse_rational_function("(q - 2)/q").eventual_sign();
  EXPECT_EQ(s.sign, 1);
  EXPECT_EQ(s.from, 3);
  const auto t = parse_rational_function("q^2 - 10*q").eventual_sign();
  EXPECT_EQ(t.sign, 1);
  EXPECT_EQ(t.from, 11);
  EXPECT_EQ(parse_rational_function("0").eventual_sign().sign, 0);
}

TEST(IntervalUnionTest, Normalization) {
  const IntervalUnion s = iu({{3, 4}, {0, 1}, {1, 2}});
  EXPECT_EQ(s.str(), "[0, 2] | [3, 4]");
  EXPECT_THROW(iu({{2, 1}}), std::invalid_argument);
  EXPECT_TRUE(IntervalUnion().is_empty());
}

TEST(IntervalUnionTest, SumsAndMeasure) {
  const IntervalUnion unit = iu({{0, 1}});
  EXPECT_EQ(iu_minkowski(unit, unit), iu({{0, 2}}));
  const IntervalUnion s = iu({{0, 1}, {3, 4}});
  const IntervalUnion two = iu_hfold(s, 2);
  EXPECT_EQ(two, iu({{0, 2}, {3, 5}, {6, 8}}));
  EXPECT_EQ(iu_minkowski(s, iu({{0, 0}})), s);
  EXPECT_EQ(iu_measure(s), Rational(2));
  EXPECT_EQ(iu_measure(two), Rational(6));
  EXPECT_EQ(iu_measure(IntervalUnion()), Rational(0));
  EXPECT_THROW(iu_hfold(s, 0), std::invalid_argument);
}

TEST(IntervalUnionTest, Hausdorff) {
  EXPECT_EQ(iu_hausdorff(iu({{0, 1}}), iu({{0, 2}})), Rational(1));
  // The gap midpoint 5/2 of [0,2] | [3,5] is 1/2 from either side.
  EXPECT_EQ(iu_hausdorff(iu({{0, 5}}), iu({{0, 2}, {3, 5}})), Rational(1, 2));
  EXPECT_EQ(iu_hausdorff(iu({{0, 1}}), iu({{0, 1}})), Rational(0));
  EXPECT_THROW(iu_hausdorff(iu({{0, 1}}), IntervalUnion()), std::invalid_argument);
}

TEST(IntervalUnionProperty, SumLaws) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<Int> e(-20, 20), n(1, 4);
  auto random_union = [&] {
    std::vector<Interval> ivs;
    for (Int k = n(rng); k > 0; --k) {
      Rational a(e(rng), n(rng)), b(e(rng), n(rng));
      if (a > b) std::swap(a, b);
      ivs.push_back({a, b});
    }
    return IntervalUnion(std::move(ivs));
  };
  for (int i = 0; i < 300; ++i) {
    const IntervalUnion a = random_union(), b = random_union(), c = random_union();
    ASSERT_EQ(iu_minkowski(a, b), iu_minkowski(b, a));
    ASSERT_EQ(iu_minkowski(iu_minkowski(a, b), c), iu_minkowski(a, iu_minkowski(b, c)));
    ASSERT_GE(iu_measure(iu_minkowski(a, b)), iu_measure(a) + iu_measure(b));
    const IntervalUnion ab = iu_intersect(a, b);
    ASSERT_TRUE(ab.is_subset_of(a));
    ASSERT_TRUE(ab.is_subset_of(b));
    ASSERT_EQ(iu_intersect(a, a), a);
  }
}

TEST(IntervalUnionProperty, MeasureMatchesSampling) {
  for (Int q = 1; q <= 9; ++q) {
    const IntervalUnion two = iu_hfold(example_member(q), 2);
    EXPECT_EQ(iu_measure(two), hfold::testing::grid_hfold_measure(example_pieces(q), 2, kGrid)) << q;
  }
}

TEST(CompactFamilyTest, ParseAndInstantiate) {
  const CompactFamily f = parse_compact_family("[0, 1 + 1/q] | [3,4]");
  ASSERT_EQ(f.intervals.size(), 2u);
  EXPECT_EQ(family_instantiate(f, 1), iu({{0, 2}, {3, 4}}));
  EXPECT_EQ(family_instantiate(parse_compact_family("[0, 1 + 1/q]"), 1), iu({{0, 2}}));
  EXPECT_EQ(family_limit(f), iu({{0, 1}, {3, 4}}));
  EXPECT_EQ(parse_compact_family(f.str()).str(), f.str());
  EXPECT_THROW(parse_compact_family("[0, 1"), CompactFamilyError);
  EXPECT_THROW(parse_compact_family("[0, 1] [2, 3]"), CompactFamilyError);
  EXPECT_THROW(family_instantiate(f, 0), std::invalid_argument);
}

TEST(CompactFamilyTest, LimitValidation) {
  const CompactFamily constant = parse_compact_family("[0, 1] | [5/2, 3]");
  EXPECT_EQ(family_limit(constant), iu({{0, 1}, {Rational(5, 2), 3}}));
  EXPECT_THROW(family_limit(parse_compact_family("[0, 2 - 1/q]")), CompactFamilyError);
  EXPECT_THROW(family_limit(parse_compact_family("[0, q]")), CompactFamilyError);
  EXPECT_THROW(family_limit(parse_compact_family("[1/q, 0]")), CompactFamilyError);
  CompactFamily slow = parse_compact_family("[0, 1] | [(2*q - 3000)/q, 3]");
  slow.pattern_threshold = 100;
  EXPECT_THROW(family_limit(slow), CompactFamilyError);
}

TEST(HausdorffLimitTest, Example) {
  const CompactFamily f = parse_compact_family("[0, 1 + 1/q] | [3, 4]");
  const HausdorffCheck r = theorem6_check(f, 2, 30);
  EXPECT_TRUE(r.equality_certified);
  EXPECT_EQ(r.h_limit, iu({{0, 2}, {3, 5}, {6, 8}}));
  ASSERT_TRUE(r.symbolic_limit.has_value());
  EXPECT_EQ(*r.symbolic_limit, r.h_limit);
  EXPECT_TRUE(r.trace_nonincreasing);
  EXPECT_EQ(r.hausdorff_trace.back(), Rational(2, 30));
}

TEST(HausdorffLimitTest, ConstantAndHEqualsOne) {
  const CompactFamily c = parse_compact_family("[0, 1] | [3, 4]");
  const HausdorffCheck r = theorem6_check(c, 3, 10);
  EXPECT_TRUE(r.equality_certified);
  for (const Rational& d : r.hausdorff_trace) EXPECT_EQ(d, Rational(0));
  const CompactFamily f = parse_compact_family("[0, 1 + 1/q] | [3, 4]");
  const HausdorffCheck one = theorem6_check(f, 1, 10);
  EXPECT_TRUE(one.equality_certified);
  EXPECT_EQ(one.h_limit, family_limit(f));
}

TEST(MeasureLimitTest, Example) {
  const CompactFamily f = parse_compact_family("[0, 1 + 1/q] | [3, 4]");
  const MeasureCheck r = theorem8_check(f, 2, 40);
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.theta, Rational(6));
  // At q = 1 the three pieces overlap into [0, 8].
  EXPECT_EQ(r.theta_trace[0], Rational(8));
  for (Int q = 2; q <= 40; ++q) EXPECT_EQ(r.theta_trace[q - 1], 6 + Rational(3, q)) << q;
  ASSERT_TRUE(r.theta_symbolic.has_value());
  EXPECT_TRUE(r.theta_symbolic->same_as(parse_rational_function("6 + 3/q")));
  for (Int q = 1; q <= 9; ++q)
    EXPECT_EQ(r.theta_trace[q - 1], hfold::testing::grid_hfold_measure(example_pieces(q), 2, kGrid)) << q;
}

TEST(MeasureLimitTest, ConstantAndHEqualsOne) {
  const CompactFamily c = parse_compact_family("[0, 1] | [3, 4]");
  const MeasureCheck r = theorem8_check(c, 2, 8);
  for (const Rational& t : r.theta_trace) EXPECT_EQ(t, r.theta);
  EXPECT_TRUE(r.verified);
  const CompactFamily f = parse_compact_family("[0, 1 + 1/q] | [3, 4]");
  const MeasureCheck one = theorem8_check(f, 1, 8);
  for (Int q = 1; q <= 8; ++q) EXPECT_EQ(one.theta_trace[q - 1], iu_measure(family_instantiate(f, q)));
}

TEST(RsetProperty, AlwaysTrueInclusionAndMonotoneTraces) {
  const std::vector<std::string> families = {
      "[0, 1 + 1/q] | [3, 4]", "[-1/q, 1] | [2 - 1/(q+1), 5/2]", "[0, 1 + 1/q^2] | [3 - 1/q, 4] | [7, 8 + 2/q]",
      "[0, (q+3)/q]"};
  for (const std::string& text : families) {
    const CompactFamily f = parse_compact_family(text);
    for (Int h = 1; h <= 3; ++h) {
      const HausdorffCheck r6 = theorem6_check(f, h, 12);
      EXPECT_TRUE(r6.trace_nonincreasing) << text;
      EXPECT_TRUE(r6.equality_certified) << text << " h=" << h;
      const MeasureCheck r8 = theorem8_check(f, h, 12);
      EXPECT_TRUE(r8.verified) << text << " h=" << h;
      IntervalUnion running = iu_hfold(family_instantiate(f, 1), h);
      for (Int q = 2; q <= 12; ++q) {
        running = iu_intersect(running, iu_hfold(family_instantiate(f, q), h));
        ASSERT_TRUE(r6.h_limit.is_subset_of(running));
      }
    }
  }
}
