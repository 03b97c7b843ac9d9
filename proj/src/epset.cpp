#include "hfold/epset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hfold {

namespace {

std::vector<bool> residue_mask(Int period, const std::vector<Int>& residues) {
  std::vector<bool> mask(static_cast<std::size_t>(period), false);
  for (Int r : residues) {
    if (r < 0 || r >= period)
      throw std::invalid_argument("residue " + std::to_string(r) +
                                  " outside [0, " + std::to_string(period) +
                                  ")");
    mask[static_cast<std::size_t>(r)] = true;
  }
  return mask;
}

std::vector<Int> mask_residues(const std::vector<bool>& mask) {
  std::vector<Int> out;
  for (std::size_t r = 0; r < mask.size(); ++r)
    if (mask[r]) out.push_back(static_cast<Int>(r));
  return out;
}

bool invariant_under_shift(const std::vector<bool>& mask, Int d) {
  const Int p = static_cast<Int>(mask.size());
  for (Int r = 0; r < p; ++r)
    if (mask[r] != mask[(r + d) % p]) return false;
  return true;
}

// Working representation used while canonicalizing and combining sets.
struct Pattern {
  Int period;
  Int lo;
  Int hi;
  std::vector<char> window;  // membership of lo..hi
  std::vector<bool> left;
  std::vector<bool> right;

  bool member(Int x) const {
    if (x < lo) return left[floor_mod(x, period)];
    if (x > hi) return right[floor_mod(x, period)];
    return window[static_cast<std::size_t>(x - lo)] != 0;
  }
};

// Re-expresses s with period `period` (a multiple of s.period()) over the
// window [lo, hi], which must contain s's window.
Pattern lift(const EpSet& s, Int period, Int lo, Int hi) {
  Pattern p{period, lo, hi, membership(s, lo, hi),
            std::vector<bool>(static_cast<std::size_t>(period)),
            std::vector<bool>(static_cast<std::size_t>(period))};
  for (Int r = 0; r < period; ++r) {
    p.left[r] = s.left_has(r % s.period());
    p.right[r] = s.right_has(r % s.period());
  }
  return p;
}

template <typename Op>
EpSet combine(const EpSet& s, const EpSet& t, Op op) {
  const Int period = checked_lcm(s.period(), t.period());
  Int lo = std::min(s.window_lo(), t.window_lo());
  Int hi = std::max(s.window_hi(), t.window_hi());
  if (lo > hi + 1) hi = lo - 1;
  const Pattern a = lift(s, period, lo, hi);
  const Pattern b = lift(t, period, lo, hi);
  RawEpSet raw;
  raw.period = period;
  raw.lo = lo;
  raw.hi = hi;
  for (Int x = lo; x <= hi; ++x)
    if (op(a.member(x), b.member(x))) raw.core.push_back(x);
  for (Int r = 0; r < period; ++r) {
    if (op(a.left[r], b.left[r])) raw.left.push_back(r);
    if (op(a.right[r], b.right[r])) raw.right.push_back(r);
  }
  return normalize(raw);
}

}  // namespace

EpSet::EpSet() : left_(1, false), right_(1, false) {}

EpSet normalize(const RawEpSet& raw) {
  if (raw.period < 1)
    throw std::invalid_argument("period must be positive, got " +
                                std::to_string(raw.period));
  if (raw.lo > checked_add(raw.hi, 1))
    throw std::invalid_argument("window lo exceeds hi + 1");
  std::vector<Int> core = raw.core;
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
  if (!core.empty() && (core.front() < raw.lo || core.back() > raw.hi))
    throw std::invalid_argument("core element outside window");

  std::vector<bool> left = residue_mask(raw.period, raw.left);
  std::vector<bool> right = residue_mask(raw.period, raw.right);

  // Least common period of both rays: the stabilizers of the two residue
  // sets are subgroups of Z_p, so the first divisor that works is minimal.
  Int period = raw.period;
  for (Int d = 1; d < raw.period; ++d) {
    if (raw.period % d != 0) continue;
    if (invariant_under_shift(left, d) && invariant_under_shift(right, d)) {
      period = d;
      break;
    }
  }
  left.resize(static_cast<std::size_t>(period));
  right.resize(static_cast<std::size_t>(period));

  auto in_core = [&](Int x) {
    return std::binary_search(core.begin(), core.end(), x);
  };
  auto member = [&](Int x) {
    if (x < raw.lo) return bool(left[floor_mod(x, period)]);
    if (x > raw.hi) return bool(right[floor_mod(x, period)]);
    return in_core(x);
  };

  std::vector<Int> differ;  // residues where the ray patterns disagree
  for (Int r = 0; r < period; ++r)
    if (left[r] != right[r]) differ.push_back(r);

  // Largest x disagreeing with the right pattern.
  std::optional<Int> last_right_mismatch;
  for (Int x = raw.hi; x >= raw.lo; --x) {
    if (member(x) != bool(right[floor_mod(x, period)])) {
      last_right_mismatch = x;
      break;
    }
  }
  if (!last_right_mismatch && !differ.empty()) {
    const Int top = checked_sub(raw.lo, 1);
    Int best = INT64_MIN;
    for (Int r : differ) best = std::max(best, top - floor_mod(top - r, period));
    last_right_mismatch = best;
  }

  EpSet out;
  out.period_ = period;
  out.left_ = left;
  out.right_ = right;
  if (!last_right_mismatch) {
    // Purely periodic: both rays agree everywhere.
    out.lo_ = 0;
    out.hi_ = -1;
    return out;
  }

  // Smallest x disagreeing with the left pattern.
  std::optional<Int> first_left_mismatch;
  for (Int x = raw.lo; x <= raw.hi; ++x) {
    if (member(x) != bool(left[floor_mod(x, period)])) {
      first_left_mismatch = x;
      break;
    }
  }
  if (!first_left_mismatch) {
    const Int bottom = checked_add(raw.hi, 1);
    Int best = INT64_MAX;
    for (Int r : differ)
      best = std::min(best, bottom + floor_mod(r - bottom, period));
    first_left_mismatch = best;
  }

  out.hi_ = *last_right_mismatch;
  out.lo_ = std::min(*first_left_mismatch, checked_add(out.hi_, 1));
  for (Int x = out.lo_; x <= out.hi_; ++x)
    if (member(x)) out.core_.push_back(x);
  return out;
}

bool EpSet::contains(Int x) const {
  if (x < lo_) return left_[floor_mod(x, period_)];
  if (x > hi_) return right_[floor_mod(x, period_)];
  return std::binary_search(core_.begin(), core_.end(), x);
}

std::vector<Int> EpSet::left_residues() const { return mask_residues(left_); }
std::vector<Int> EpSet::right_residues() const { return mask_residues(right_); }

bool EpSet::has_left_ray() const {
  return std::find(left_.begin(), left_.end(), true) != left_.end();
}

bool EpSet::has_right_ray() const {
  return std::find(right_.begin(), right_.end(), true) != right_.end();
}

bool EpSet::is_empty() const { return is_finite() && core_.empty(); }

bool EpSet::is_all() const {
  return period_ == 1 && left_[0] && right_[0] && core_.empty() && lo_ > hi_;
}

RawEpSet EpSet::raw() const {
  return RawEpSet{period_, lo_, hi_, core_, left_residues(), right_residues()};
}

EpSet EpSet::all_integers() { return normalize({1, 0, -1, {}, {0}, {0}}); }
EpSet EpSet::positive_integers() { return ray_geq(1); }
EpSet EpSet::nonnegative_integers() { return ray_geq(0); }

EpSet EpSet::from_finite(std::vector<Int> elements) {
  if (elements.empty()) return EpSet();
  const auto [mn, mx] = std::minmax_element(elements.begin(), elements.end());
  return normalize({1, *mn, *mx, std::move(elements), {}, {}});
}

EpSet EpSet::ray_geq(Int t) { return normalize({1, t, checked_sub(t, 1), {}, {}, {0}}); }

EpSet EpSet::ray_leq(Int t) { return normalize({1, checked_add(t, 1), t, {}, {0}, {}}); }

EpSet EpSet::abs_geq(Int q) {
  if (q < 1) throw std::invalid_argument("abs_geq requires q >= 1");
  return normalize({1, checked_sub(1, q), checked_sub(q, 1), {}, {0}, {0}});
}

EpSet EpSet::ap(Int a, Int d) {
  if (d < 1) throw std::invalid_argument("ap requires a positive difference");
  return normalize({d, a, checked_sub(a, 1), {}, {}, {floor_mod(a, d)}});
}

EpSet EpSet::dilate(Int d) {
  if (d < 1) throw std::invalid_argument("dilate requires a positive modulus");
  return normalize({d, 0, -1, {}, {0}, {0}});
}

EpSet EpSet::residue_classes(Int p, const std::vector<Int>& residues) {
  if (p < 1) throw std::invalid_argument("period must be positive");
  std::vector<Int> rs;
  for (Int r : residues) rs.push_back(floor_mod(r, p));
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  return normalize({p, 0, -1, {}, rs, rs});
}

EpSet set_union(const EpSet& s, const EpSet& t) {
  return combine(s, t, [](bool a, bool b) { return a || b; });
}

EpSet set_intersect(const EpSet& s, const EpSet& t) {
  return combine(s, t, [](bool a, bool b) { return a && b; });
}

EpSet set_difference(const EpSet& s, const EpSet& t) {
  return combine(s, t, [](bool a, bool b) { return a && !b; });
}

EpSet set_complement(const EpSet& s) {
  return combine(s, EpSet(), [](bool a, bool) { return !a; });
}

EpSet translate(const EpSet& s, Int shift) {
  RawEpSet raw = s.raw();
  raw.lo = checked_add(raw.lo, shift);
  raw.hi = checked_add(raw.hi, shift);
  for (Int& x : raw.core) x = checked_add(x, shift);
  for (Int& r : raw.left) r = floor_mod(r + floor_mod(shift, raw.period), raw.period);
  for (Int& r : raw.right) r = floor_mod(r + floor_mod(shift, raw.period), raw.period);
  return normalize(raw);
}

bool equals(const EpSet& s, const EpSet& t) { return s == t; }

bool is_subset(const EpSet& s, const EpSet& t) {
  return set_difference(s, t).is_empty();
}

Extremum minimum(const EpSet& s) {
  if (s.has_left_ray()) return {Extremum::Kind::Infinite, 0};
  if (!s.core().empty()) return {Extremum::Kind::Finite, s.core().front()};
  if (s.has_right_ray()) {
    const Int start = checked_add(s.window_hi(), 1);
    for (Int x = start;; ++x)
      if (s.right_has(floor_mod(x, s.period()))) return {Extremum::Kind::Finite, x};
  }
  return {};
}

Extremum maximum(const EpSet& s) {
  if (s.has_right_ray()) return {Extremum::Kind::Infinite, 0};
  if (!s.core().empty()) return {Extremum::Kind::Finite, s.core().back()};
  if (s.has_left_ray()) {
    const Int start = checked_sub(s.window_lo(), 1);
    for (Int x = start;; --x)
      if (s.left_has(floor_mod(x, s.period()))) return {Extremum::Kind::Finite, x};
  }
  return {};
}

std::optional<Int> element_nearest_zero(const EpSet& s) {
  if (s.is_empty()) return std::nullopt;
  const Int bound = checked_add(window_extent(s), s.period() + 1);
  for (Int k = 0; k <= bound; ++k) {
    if (s.contains(-k)) return -k;
    if (s.contains(k)) return k;
  }
  return std::nullopt;  // unreachable for a nonempty set
}

Int window_extent(const EpSet& s) {
  return std::max(s.window_lo() < 0 ? -s.window_lo() : s.window_lo(),
                  s.window_hi() < 0 ? -s.window_hi() : s.window_hi());
}

std::vector<char> membership(const EpSet& s, Int from, Int to) {
  std::vector<char> out;
  if (to < from) return out;
  out.resize(static_cast<std::size_t>(to - from + 1));
  auto it = std::lower_bound(s.core().begin(), s.core().end(), from);
  for (Int x = from; x <= to; ++x) {
    bool m;
    if (x < s.window_lo()) {
      m = s.left_has(floor_mod(x, s.period()));
    } else if (x > s.window_hi()) {
      m = s.right_has(floor_mod(x, s.period()));
    } else {
      while (it != s.core().end() && *it < x) ++it;
      m = it != s.core().end() && *it == x;
    }
    out[static_cast<std::size_t>(x - from)] = m;
  }
  return out;
}

std::string describe(const EpSet& s) {
  std::ostringstream os;
  auto list = [&os](const std::vector<Int>& v) {
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << '}';
  };
  os << "p=" << s.period() << " window=[" << s.window_lo() << ','
     << s.window_hi() << "] core=";
  list(s.core());
  os << " left=";
  list(s.left_residues());
  os << " right=";
  list(s.right_residues());
  return os.str();
}

}  // namespace hfold
