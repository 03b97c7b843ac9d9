#ifndef HFOLD_POLYNOMIAL_HPP
#define HFOLD_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "hfold/integer.hpp"

namespace hfold {

/// Integer polynomial in one variable; coefficients low degree first, with
/// no trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> coeffs);
  static Polynomial constant(const BigInt& c);
  static Polynomial variable();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(int k) const;
  BigInt leading() const { return is_zero() ? BigInt(0) : coeffs_.back(); }

  BigInt eval(const BigInt& x) const;
  Rational eval(const Rational& x) const;
  /// Evaluation that must fit Int (throws std::overflow_error otherwise).
  Int eval_int(Int x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial pow(unsigned k) const;
  Polynomial scaled(const BigInt& c) const;
  /// Divides every coefficient by c; requires exact divisibility.
  Polynomial divided_exact(const BigInt& c) const;
  /// p(x + c)
  Polynomial shifted(const BigInt& c) const;
  /// gcd of the coefficients (0 for the zero polynomial).
  BigInt content() const;
  /// Divided by its content, with positive leading coefficient.
  Polynomial primitive_part() const;
  /// Exact quotient in Z[x]; throws std::invalid_argument when d does not
  /// divide this polynomial.
  Polynomial divided_exact(const Polynomial& d) const;

  bool operator==(const Polynomial&) const = default;

  /// Least integer B >= 1 such that the polynomial has no real root > B
  /// (Cauchy bound); 1 for constants.
  BigInt root_bound() const;

  /// "q^2+2*q-1" style text; "0" for the zero polynomial.
  std::string str(const std::string& var = "q") const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Quotient of integer polynomials with a denominator positive for every
/// integer q >= 1.
class RationalFunction {
 public:
  RationalFunction();
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction constant(const Rational& c);
  static RationalFunction variable();

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_constant() const;

  Rational eval(Int q) const;
  /// Limit as q -> infinity; throws std::domain_error when unbounded.
  Rational limit() const;
  bool has_finite_limit() const { return num_.degree() <= den_.degree(); }

  /// Sign of f(q) for all integers q >= from (both returned).
  struct EventualSign {
    int sign;
    Int from;
  };
  EventualSign eventual_sign() const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  /// Throws std::domain_error when o is identically zero or its sign is
  /// not fixed on q >= 1.
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;

  /// f(q + c)
  RationalFunction shifted(Int c) const;

  /// Equal as functions of q.
  bool same_as(const RationalFunction& o) const;

  std::string str(const std::string& var = "q") const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

/// Primitive gcd with positive leading coefficient (0 if both are zero).
Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b);

/// Throws std::domain_error unless p(q) > 0 for every integer q >= 1.
void require_positive_on_naturals(const Polynomial& p);

std::string rational_str(const Rational& r);

}  // namespace hfold

#endif  // HFOLD_POLYNOMIAL_HPP
