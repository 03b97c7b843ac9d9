#include "hfold/rset.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace hfold {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) {
  for (const Interval& iv : intervals)
    if (iv.lo > iv.hi)
      throw std::invalid_argument("interval [" + rational_str(iv.lo) + ", " + rational_str(iv.hi) + "] is empty");
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (Interval& iv : intervals) {
    if (!ivs_.empty() && iv.lo <= ivs_.back().hi) {
      ivs_.back().hi = std::max(ivs_.back().hi, iv.hi);
    } else {
      ivs_.push_back(std::move(iv));
    }
  }
}

bool IntervalUnion::contains(const Rational& x) const {
  for (const Interval& iv : ivs_)
    if (iv.lo <= x && x <= iv.hi) return true;
  return false;
}

bool IntervalUnion::is_subset_of(const IntervalUnion& other) const {
  for (const Interval& iv : ivs_) {
    bool covered = false;
    for (const Interval& o : other.ivs_)
      if (o.lo <= iv.lo && iv.hi <= o.hi) covered = true;
    if (!covered) return false;
  }
  return true;
}

std::string IntervalUnion::str() const {
  if (ivs_.empty()) return "empty";
  std::string out;
  for (const Interval& iv : ivs_) {
    if (!out.empty()) out += " | ";
    out += "[" + rational_str(iv.lo) + ", " + rational_str(iv.hi) + "]";
  }
  return out;
}

IntervalUnion iu_minkowski(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> sums;
  for (const Interval& x : a.intervals())
    for (const Interval& y : b.intervals()) sums.push_back({x.lo + y.lo, x.hi + y.hi});
  return IntervalUnion(std::move(sums));
}

IntervalUnion iu_hfold(const IntervalUnion& s, Int h) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  IntervalUnion acc = s;
  for (Int i = 1; i < h; ++i) acc = iu_minkowski(acc, s);
  return acc;
}

IntervalUnion iu_intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const Rational lo = std::max(x[i].lo, y[j].lo);
    const Rational hi = std::min(x[i].hi, y[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalUnion(std::move(out));
}

Rational iu_measure(const IntervalUnion& s) {
  Rational m = 0;
  for (const Interval& iv : s.intervals()) m += iv.hi - iv.lo;
  return m;
}

namespace {

Rational distance_to(const Rational& x, const IntervalUnion& s) {
  std::optional<Rational> best;
  for (const Interval& iv : s.intervals()) {
    Rational d = 0;
    if (x < iv.lo) d = iv.lo - x;
    if (x > iv.hi) d = x - iv.hi;
    if (!best || d < *best) best = d;
  }
  return *best;
}

// sup over a of the distance to b: attained at an endpoint of a or at the
// midpoint of a gap of b lying inside a.
Rational directed_hausdorff(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Rational> candidates;
  for (const Interval& iv : a.intervals()) {
    candidates.push_back(iv.lo);
    candidates.push_back(iv.hi);
  }
  const auto& bs = b.intervals();
  for (std::size_t k = 0; k + 1 < bs.size(); ++k) {
    const Rational mid = (bs[k].hi + bs[k + 1].lo) / 2;
    if (a.contains(mid)) candidates.push_back(mid);
  }
  Rational worst = 0;
  for (const Rational& c : candidates) worst = std::max(worst, distance_to(c, b));
  return worst;
}

}  // namespace

Rational iu_hausdorff(const IntervalUnion& a, const IntervalUnion& b) {
  if (a.is_empty() && b.is_empty()) return 0;
  if (a.is_empty() || b.is_empty()) throw std::invalid_argument("Hausdorff distance to the empty set is infinite");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::string CompactFamily::str() const {
  std::string out;
  for (const SymbolicInterval& iv : intervals) {
    if (!out.empty()) out += " | ";
    out += "[" + iv.lo.str() + ", " + iv.hi.str() + "]";
  }
  return out.empty() ? "empty" : out;
}

namespace {

class RationalParser {
 public:
  explicit RationalParser(const std::string& text) : text_(text) {}

  RationalFunction parse_all() {
    RationalFunction f = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw CompactFamilyError("endpoint expression '" + text_ + "' at position " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction acc = term();
    while (true) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    while (true) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        const RationalFunction d = unary();
        try {
          acc = acc / d;
        } catch (const std::domain_error& e) {
          pos_ = at;
          fail(e.what());
        }
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (eat('-')) return -unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    const unsigned k = static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start)));
    if (k > 64) fail("exponent too large");
    RationalFunction r = RationalFunction::constant(1);
    for (unsigned i = 0; i < k; ++i) r = r * base;
    return r;
  }

  RationalFunction atom() {
    skip();
    if (eat('(')) {
      RationalFunction f = expr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (pos_ < text_.size() && text_[pos_] == 'q') {
      ++pos_;
      return RationalFunction::variable();
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number, q or '('");
    return RationalFunction::constant(Rational(BigInt(text_.substr(start, pos_ - start))));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

RationalFunction parse_rational_function(const std::string& text) { return RationalParser(text).parse_all(); }

CompactFamily parse_compact_family(const std::string& text) {
  CompactFamily f;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos == text.size()) throw CompactFamilyError("empty family specification");
  while (true) {
    skip();
    if (pos >= text.size() || text[pos] != '[')
      throw CompactFamilyError("expected '[' at position " + std::to_string(pos));
    ++pos;
    int depth = 0;
    std::size_t comma = std::string::npos, close = std::string::npos;
    for (std::size_t k = pos; k < text.size() && close == std::string::npos; ++k) {
      if (text[k] == '(') ++depth;
      if (text[k] == ')') --depth;
      if (depth == 0 && text[k] == ',' && comma == std::string::npos) comma = k;
      if (depth == 0 && text[k] == ']') close = k;
    }
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw CompactFamilyError("malformed interval starting at position " + std::to_string(pos - 1));
    SymbolicInterval iv{parse_rational_function(trimmed(text.substr(pos, comma - pos))),
                        parse_rational_function(trimmed(text.substr(comma + 1, close - comma - 1)))};
    f.intervals.push_back(std::move(iv));
    pos = close + 1;
    skip();
    if (pos == text.size()) break;
    if (text[pos] == '|') {
      ++pos;
    } else if (text.compare(pos, 3, "∪") == 0) {
      pos += 3;
    } else {
      throw CompactFamilyError("expected '|' between intervals at position " + std::to_string(pos));
    }
  }
  return f;
}

IntervalUnion family_instantiate(const CompactFamily& f, Int q) {
  if (q < 1) throw std::invalid_argument("family index q must be >= 1");
  std::vector<Interval> ivs;
  for (const SymbolicInterval& iv : f.intervals) {
    Interval out{iv.lo.eval(q), iv.hi.eval(q)};
    if (out.lo > out.hi)
      throw CompactFamilyError("template interval [" + iv.lo.str() + ", " + iv.hi.str() + "] is empty at q = " +
                               std::to_string(q));
    ivs.push_back(std::move(out));
  }
  return IntervalUnion(std::move(ivs));
}

Int stable_order_from(const std::vector<RationalFunction>& endpoints) {
  Int from = 1;
  for (std::size_t i = 0; i < endpoints.size(); ++i)
    for (std::size_t j = i + 1; j < endpoints.size(); ++j)
      from = std::max(from, (endpoints[i] - endpoints[j]).eventual_sign().from);
  return from;
}

namespace {

std::vector<RationalFunction> endpoints_of(const std::vector<SymbolicInterval>& ivs) {
  std::vector<RationalFunction> out;
  for (const SymbolicInterval& iv : ivs) {
    out.push_back(iv.lo);
    out.push_back(iv.hi);
  }
  return out;
}

// Every template interval shrinks from `from` on: lo nondecreasing, hi
// nonincreasing. Returns that q, or nullopt when some endpoint moves the
// wrong way forever.
std::optional<Int> shrinking_from(const std::vector<SymbolicInterval>& ivs) {
  Int from = 1;
  for (const SymbolicInterval& iv : ivs) {
    const auto up = (iv.lo.shifted(1) - iv.lo).eventual_sign();
    const auto down = (iv.hi.shifted(1) - iv.hi).eventual_sign();
    if (up.sign < 0 || down.sign > 0) return std::nullopt;
    from = std::max({from, up.from, down.from});
  }
  return from;
}

}  // namespace

IntervalUnion family_limit(const CompactFamily& f) {
  if (f.intervals.empty()) throw CompactFamilyError("family has no intervals (members must be nonempty)");
  std::vector<Interval> limits;
  for (const SymbolicInterval& iv : f.intervals) {
    if (!iv.lo.has_finite_limit() || !iv.hi.has_finite_limit())
      throw CompactFamilyError("endpoint of [" + iv.lo.str() + ", " + iv.hi.str() + "] has no finite limit");
    limits.push_back({iv.lo.limit(), iv.hi.limit()});
  }
  const Int pattern = stable_order_from(endpoints_of(f.intervals));
  if (pattern > f.pattern_threshold)
    throw CompactFamilyError("interval pattern keeps changing until q = " + std::to_string(pattern) +
                             ", beyond the threshold " + std::to_string(f.pattern_threshold));
  const std::optional<Int> shrink = shrinking_from(f.intervals);
  if (!shrink) throw CompactFamilyError("an endpoint moves outward for all large q; the family is not decreasing");

  // Below the symbolic tail, check members directly.
  const Int probe_to = std::max({f.probe_q, pattern, *shrink}) + 1;
  IntervalUnion previous = family_instantiate(f, 1);
  for (Int q = 2; q <= probe_to; ++q) {
    IntervalUnion next = family_instantiate(f, q);
    if (!next.is_subset_of(previous))
      throw CompactFamilyError("family is not decreasing: A_" + std::to_string(q) + " is not contained in A_" +
                               std::to_string(q - 1));
    previous = std::move(next);
  }

  IntervalUnion limit(std::move(limits));
  // Probe points: the limit lies in every member, gap midpoints leave late members.
  const Int far_q = 1000000;
  const IntervalUnion far = family_instantiate(f, far_q);
  if (!limit.is_subset_of(far) || !limit.is_subset_of(previous))
    throw CompactFamilyError("endpoint limits are not contained in the members");
  const auto& ls = limit.intervals();
  for (std::size_t k = 0; k + 1 < ls.size(); ++k) {
    const Rational mid = (ls[k].hi + ls[k + 1].lo) / 2;
    if (far.contains(mid))
      throw CompactFamilyError("probe point " + rational_str(mid) + " between limit intervals is still in A_" +
                               std::to_string(far_q));
  }
  return limit;
}

SymbolicUnion symbolic_hfold(const CompactFamily& f, Int h) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  const std::size_t n = f.intervals.size();
  std::vector<SymbolicInterval> sums;
  std::vector<std::size_t> pick(static_cast<std::size_t>(h), 0);
  while (true) {
    SymbolicInterval s{RationalFunction(), RationalFunction()};
    for (std::size_t k : pick) {
      s.lo = s.lo + f.intervals[k].lo;
      s.hi = s.hi + f.intervals[k].hi;
    }
    sums.push_back(std::move(s));
    // Next nondecreasing index sequence.
    std::size_t i = pick.size();
    while (i > 0 && pick[i - 1] == n - 1) --i;
    if (i == 0) break;
    const std::size_t v = pick[i - 1] + 1;
    for (std::size_t k = i - 1; k < pick.size(); ++k) pick[k] = v;
  }

  SymbolicUnion out;
  out.from = stable_order_from(endpoints_of(sums));
  if (out.from > f.pattern_threshold)
    throw CompactFamilyError("h-fold interval pattern keeps changing until q = " + std::to_string(out.from));
  auto less_eventually = [](const RationalFunction& a, const RationalFunction& b) {
    return (a - b).eventual_sign().sign < 0;
  };
  std::stable_sort(sums.begin(), sums.end(),
                   [&](const SymbolicInterval& a, const SymbolicInterval& b) { return less_eventually(a.lo, b.lo); });
  for (SymbolicInterval& s : sums) {
    if (!out.intervals.empty() && !less_eventually(out.intervals.back().hi, s.lo)) {
      if (less_eventually(out.intervals.back().hi, s.hi)) out.intervals.back().hi = s.hi;
    } else {
      out.intervals.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

bool nonincreasing(const std::vector<Rational>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  return true;
}

}  // namespace

HausdorffCheck theorem6_check(const CompactFamily& f, Int h, Int max_q) {
  if (max_q < 1) throw std::invalid_argument("truncation Q must be >= 1");
  HausdorffCheck r;
  const IntervalUnion limit = family_limit(f);
  r.h_limit = iu_hfold(limit, h);
  try {
    const SymbolicUnion sym = symbolic_hfold(f, h);
    std::vector<Interval> limits;
    for (const SymbolicInterval& iv : sym.intervals) limits.push_back({iv.lo.limit(), iv.hi.limit()});
    r.symbolic_limit = IntervalUnion(std::move(limits));
    r.pattern_from = sym.from;
    r.equality_certified = *r.symbolic_limit == r.h_limit;
    r.note = r.equality_certified ? "symbolic limit of hA_q equals hA"
                                  : "symbolic limit " + r.symbolic_limit->str() + " differs from hA";
  } catch (const CompactFamilyError& e) {
    r.note = std::string("pattern instability, trace only: ") + e.what();
  }
  IntervalUnion running = iu_hfold(family_instantiate(f, 1), h);
  for (Int q = 1; q <= max_q; ++q) {
    if (q > 1) running = iu_intersect(running, iu_hfold(family_instantiate(f, q), h));
    r.hausdorff_trace.push_back(iu_hausdorff(running, r.h_limit));
  }
  r.trace_nonincreasing = nonincreasing(r.hausdorff_trace);
  return r;
}

MeasureCheck theorem8_check(const CompactFamily& f, Int h, Int max_q) {
  if (max_q < 1) throw std::invalid_argument("truncation Q must be >= 1");
  MeasureCheck r;
  const IntervalUnion limit = family_limit(f);
  r.theta = iu_measure(iu_hfold(limit, h));
  for (Int q = 1; q <= max_q; ++q) r.theta_trace.push_back(iu_measure(iu_hfold(family_instantiate(f, q), h)));
  r.trace_nonincreasing = nonincreasing(r.theta_trace);
  bool symbolic_ok = false;
  try {
    const SymbolicUnion sym = symbolic_hfold(f, h);
    RationalFunction total;
    for (const SymbolicInterval& iv : sym.intervals) total = total + (iv.hi - iv.lo);
    r.theta_symbolic = total;
    r.theta_from = sym.from;
    symbolic_ok = total.has_finite_limit() && total.limit() == r.theta;
    for (Int q = sym.from; q <= max_q && symbolic_ok; ++q) symbolic_ok = total.eval(q) == r.theta_trace[q - 1];
  } catch (const CompactFamilyError&) {
    symbolic_ok = false;
  }
  r.verified = r.trace_nonincreasing && symbolic_ok;
  return r;
}

}  // namespace hfold
