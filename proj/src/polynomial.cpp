#include "hfold/polynomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hfold {

namespace {

constexpr Int kScanCap = 1000000;

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

int sign_of(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

Polynomial::Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const BigInt& c) { return Polynomial({c}); }

Polynomial Polynomial::variable() { return Polynomial({0, 1}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt Polynomial::coefficient(int k) const {
  return k >= 0 && k <= degree() ? coeffs_[k] : BigInt(0);
}

BigInt Polynomial::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

Int Polynomial::eval_int(Int x) const { return to_int(eval(BigInt(x))); }

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coefficient(int(i)) + o.coefficient(int(i));
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> c(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::scaled(const BigInt& c) const {
  std::vector<BigInt> out = coeffs_;
  for (BigInt& v : out) v *= c;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::divided_exact(const BigInt& c) const {
  std::vector<BigInt> out = coeffs_;
  for (BigInt& v : out) {
    if (v % c != 0) throw std::invalid_argument("inexact polynomial division");
    v /= c;
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted(const BigInt& c) const {
  const Polynomial step({c, 1});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * step + constant(*it);
  return acc;
}

BigInt Polynomial::content() const {
  BigInt g = 0;
  for (const BigInt& v : coeffs_) g = boost::multiprecision::gcd(g, abs_big(v));
  return g;
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return {};
  Polynomial p = divided_exact(content());
  return p.leading() < 0 ? -p : p;
}

Polynomial Polynomial::divided_exact(const Polynomial& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  std::vector<BigInt> rem = coeffs_;
  if (degree() < d.degree()) {
    if (!is_zero()) throw std::invalid_argument("inexact polynomial division");
    return {};
  }
  std::vector<BigInt> quot(degree() - d.degree() + 1);
  for (int k = degree() - d.degree(); k >= 0; --k) {
    const BigInt& top = rem[k + d.degree()];
    if (top % d.leading() != 0) throw std::invalid_argument("inexact polynomial division");
    quot[k] = top / d.leading();
    for (int i = 0; i <= d.degree(); ++i) rem[k + i] -= quot[k] * d.coeffs_[i];
  }
  for (const BigInt& r : rem)
    if (r != 0) throw std::invalid_argument("inexact polynomial division");
  return Polynomial(std::move(quot));
}

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a.primitive_part(), y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    // pseudo-remainder of x by y
    Polynomial r = x;
    while (!r.is_zero() && r.degree() >= y.degree()) {
      std::vector<BigInt> shift(r.degree() - y.degree() + 1);
      shift.back() = r.leading();
      r = r.scaled(y.leading()) - Polynomial(std::move(shift)) * y;
    }
    x = y;
    y = r.primitive_part();
  }
  return x;
}

BigInt Polynomial::root_bound() const {
  if (degree() < 1) return 1;
  const BigInt lead = abs_big(leading());
  BigInt worst = 0;
  for (int i = 0; i < degree(); ++i) worst = std::max(worst, abs_big(coeffs_[i]));
  // 1 + ceil(max |a_i| / |a_n|)
  return 1 + (worst + lead - 1) / lead;
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    const BigInt mag = abs_big(c);
    if (c < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    if (k == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str() + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

void require_positive_on_naturals(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("denominator is identically zero");
  if (p.leading() < 0) throw std::domain_error("denominator " + p.str() + " is negative for large q");
  const BigInt bound = p.root_bound();
  if (bound > kScanCap) throw std::domain_error("cannot verify positivity of " + p.str() + " on q >= 1");
  for (Int q = 1; q <= static_cast<Int>(bound); ++q)
    if (p.eval(BigInt(q)) <= 0)
      throw std::domain_error("denominator " + p.str() + " is not positive at q = " + std::to_string(q));
}

RationalFunction::RationalFunction() : num_(), den_(Polynomial::constant(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  require_positive_on_naturals(den_);
  normalize();
}

RationalFunction RationalFunction::constant(const Rational& c) {
  RationalFunction f;
  f.num_ = Polynomial::constant(boost::multiprecision::numerator(c));
  f.den_ = Polynomial::constant(boost::multiprecision::denominator(c));
  f.normalize();
  return f;
}

RationalFunction RationalFunction::variable() {
  RationalFunction f;
  f.num_ = Polynomial::variable();
  return f;
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial common = polynomial_gcd(num_, den_);
  if (common.degree() >= 1) {
    const Polynomial d = den_.divided_exact(common);
    try {
      require_positive_on_naturals(d);
      num_ = num_.divided_exact(common);
      den_ = d;
    } catch (const std::domain_error&) {
      // the common factor changes sign between integers; keep it
    }
  }
  const BigInt g = boost::multiprecision::gcd(num_.content(), den_.content());
  if (g > 1) {
    num_ = num_.divided_exact(g);
    den_ = den_.divided_exact(g);
  }
}

bool RationalFunction::is_constant() const { return num_.is_constant() && den_.is_constant(); }

Rational RationalFunction::eval(Int q) const {
  return Rational(num_.eval(BigInt(q)), den_.eval(BigInt(q)));
}

Rational RationalFunction::limit() const {
  if (!has_finite_limit()) throw std::domain_error("rational function " + str() + " is unbounded as q grows");
  if (num_.degree() < den_.degree()) return 0;
  return Rational(num_.leading(), den_.leading());
}

RationalFunction::EventualSign RationalFunction::eventual_sign() const {
  if (num_.is_zero()) return {0, 1};
  const int s = sign_of(num_.leading());
  const BigInt bound = num_.root_bound();
  if (bound > kScanCap) return {s, to_int(bound)};
  Int from = static_cast<Int>(bound);
  while (from > 1 && sign_of(num_.eval(BigInt(from - 1))) == s) --from;
  return {s, from};
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  RationalFunction f;
  f.num_ = num_ * o.den_ + o.num_ * den_;
  f.den_ = den_ * o.den_;
  f.normalize();
  return f;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction f = *this;
  f.num_ = -num_;
  return f;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  RationalFunction f;
  f.num_ = num_ * o.num_;
  f.den_ = den_ * o.den_;
  f.normalize();
  return f;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.num_.is_zero()) throw std::domain_error("division by zero");
  Polynomial divisor = o.num_;
  bool negate = false;
  try {
    require_positive_on_naturals(divisor);
  } catch (const std::domain_error&) {
    require_positive_on_naturals(-divisor);
    negate = true;
  }
  RationalFunction f;
  f.num_ = num_ * o.den_;
  f.den_ = den_ * divisor;
  if (negate) f.num_ = -f.num_;
  f.normalize();
  return f;
}

RationalFunction RationalFunction::shifted(Int c) const {
  RationalFunction f;
  f.num_ = num_.shifted(c);
  f.den_ = den_.shifted(c);
  f.normalize();
  return f;
}

bool RationalFunction::same_as(const RationalFunction& o) const { return num_ * o.den_ == o.num_ * den_; }

std::string RationalFunction::str(const std::string& var) const {
  const std::string n = num_.str(var);
  if (den_ == Polynomial::constant(1)) return n;
  auto wrap = [](const Polynomial& p, const std::string& text) {
    int terms = 0;
    for (const BigInt& c : p.coefficients()) terms += c != 0;
    const bool bare = terms == 1 && (p.leading() > 0 || p.degree() == 0);
    return bare && text.find('*') == std::string::npos ? text : "(" + text + ")";
  };
  return wrap(num_, n) + "/" + wrap(den_, den_.str(var));
}

std::string rational_str(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace hfold
