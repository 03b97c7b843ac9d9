#ifndef HFOLD_INTEGER_HPP
#define HFOLD_INTEGER_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hfold {

/// Element type for sets of integers. All arithmetic on elements, windows
/// and periods goes through the checked helpers below, so an overflow is
/// reported as std::overflow_error instead of wrapping.
using Int = std::int64_t;

/// Unbounded integer used for counts (representation numbers, binomials).
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational used by the interval-union module.
using Rational = boost::multiprecision::cpp_rational;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in multiplication");
  return r;
}

/// Remainder in [0, m) for m > 0.
inline Int floor_mod(Int x, Int m) {
  Int r = x % m;
  return r < 0 ? r + m : r;
}

inline Int checked_lcm(Int a, Int b) {
  return checked_mul(a / std::gcd(a, b), b);
}

inline Int to_int(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
    throw std::overflow_error("value " + v.str() + " exceeds 64-bit range");
  return static_cast<Int>(v);
}

/// Binomial coefficient C(n, k) for 0 <= k; zero when k > n.
inline BigInt binomial(Int n, Int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (Int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace hfold

#endif  // HFOLD_INTEGER_HPP
