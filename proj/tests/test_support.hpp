#ifndef HFOLD_TESTS_TEST_SUPPORT_HPP
#define HFOLD_TESTS_TEST_SUPPORT_HPP

#include <boost/dynamic_bitset.hpp>
#include <random>
#include <utility>
#include <vector>

#include "hfold/epset.hpp"
#include "hfold/rset.hpp"

namespace hfold::testing {

/// Random structurally valid EpSet: period in [1, max_period], window of
/// span at most max_span starting in [-anchor, anchor].
inline RawEpSet random_raw(std::mt19937_64& rng, Int max_period = 12, Int max_span = 40,
                           Int anchor = 30, double density = 0.5) {
  std::uniform_int_distribution<Int> period_dist(1, max_period);
  std::uniform_int_distribution<Int> span_dist(0, max_span);
  std::uniform_int_distribution<Int> anchor_dist(-anchor, anchor);
  std::bernoulli_distribution coin(density);
  std::bernoulli_distribution ray_present(0.7);
  RawEpSet raw;
  raw.period = period_dist(rng);
  raw.lo = anchor_dist(rng);
  raw.hi = raw.lo + span_dist(rng) - 1;
  for (Int x = raw.lo; x <= raw.hi; ++x)
    if (coin(rng)) raw.core.push_back(x);
  const bool with_left = ray_present(rng);
  const bool with_right = ray_present(rng);
  for (Int r = 0; r < raw.period; ++r) {
    if (with_left && coin(rng)) raw.left.push_back(r);
    if (with_right && coin(rng)) raw.right.push_back(r);
  }
  return raw;
}

inline EpSet random_epset(std::mt19937_64& rng, Int max_period = 12, Int max_span = 40,
                          Int anchor = 30, double density = 0.5) {
  return normalize(random_raw(rng, max_period, max_span, anchor, density));
}

/// Membership straight from the raw fields, independent of normalization.
inline bool raw_contains(const RawEpSet& raw, Int x) {
  auto has = [](const std::vector<Int>& v, Int e) {
    for (Int y : v)
      if (y == e) return true;
    return false;
  };
  if (x < raw.lo) return has(raw.left, floor_mod(x, raw.period));
  if (x > raw.hi) return has(raw.right, floor_mod(x, raw.period));
  return has(raw.core, x);
}

/// Measure of the h-fold sum of a union of intervals, computed on the grid
/// (1/n)Z: the grid points of each interval are summed by bitset shifts and
/// every run of consecutive points contributes (length - 1)/n. Exact when
/// all endpoints are multiples of 1/n.
inline Rational grid_hfold_measure(const std::vector<std::pair<Rational, Rational>>& intervals, Int h, Int n) {
  Int lo = 0, hi = 0;
  bool first = true;
  std::vector<std::pair<Int, Int>> idx;
  for (const auto& [a, b] : intervals) {
    const Rational sa = a * n, sb = b * n;
    Int ia = to_int(BigInt(boost::multiprecision::numerator(sa) / boost::multiprecision::denominator(sa)));
    if (Rational(ia) < sa) ++ia;
    Int ib = to_int(BigInt(boost::multiprecision::numerator(sb) / boost::multiprecision::denominator(sb)));
    if (Rational(ib) > sb) --ib;
    if (ia > ib) continue;
    idx.push_back({ia, ib});
    lo = first ? ia : std::min(lo, ia);
    hi = first ? ib : std::max(hi, ib);
    first = false;
  }
  if (idx.empty()) return 0;
  const std::size_t span = static_cast<std::size_t>(hi - lo);
  boost::dynamic_bitset<> base(span + 1);
  for (const auto& [a, b] : idx)
    for (Int k = a; k <= b; ++k) base.set(static_cast<std::size_t>(k - lo));
  boost::dynamic_bitset<> acc = base;
  for (Int j = 1; j < h; ++j) {
    boost::dynamic_bitset<> next(acc.size() + span);
    acc.resize(next.size());
    for (std::size_t k = base.find_first(); k != boost::dynamic_bitset<>::npos; k = base.find_next(k)) next |= acc << k;
    acc = next;
  }
  Int total = 0, run = 0;
  for (std::size_t k = 0; k <= acc.size(); ++k) {
    if (k < acc.size() && acc[k]) {
      ++run;
    } else {
      if (run > 0) total += run - 1;
      run = 0;
    }
  }
  return Rational(total, n);
}

}  // namespace hfold::testing

#endif  // HFOLD_TESTS_TEST_SUPPORT_HPP
