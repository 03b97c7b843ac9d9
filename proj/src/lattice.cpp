#include "hfold/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace hfold {

namespace {

std::size_t grid_size(Int base, Int d) {
  Int n = 1;
  for (Int i = 0; i < d; ++i) n = checked_mul(n, base);
  if (n > (Int(1) << 31)) throw std::invalid_argument("lattice window too large to materialize");
  return static_cast<std::size_t>(n);
}

void require_dimension(const LatticePoint& x, Int d) {
  if (static_cast<Int>(x.size()) != d)
    throw std::invalid_argument("point has dimension " + std::to_string(x.size()) + ", expected " +
                                std::to_string(d));
}

// Flattened index of x + offset in a grid of the given base.
Int flat(const LatticePoint& x, Int base, Int offset) {
  Int idx = 0, scale = 1;
  for (Int c : x) {
    idx += (c + offset) * scale;
    scale *= base;
  }
  return idx;
}

LatticePoint unflat(std::size_t idx, Int d, Int base, Int offset) {
  LatticePoint x(d);
  for (Int i = 0; i < d; ++i) {
    x[i] = static_cast<Int>(idx % base) - offset;
    idx /= base;
  }
  return x;
}

void or_shifted(boost::dynamic_bitset<>& acc, const boost::dynamic_bitset<>& src, Int shift) {
  if (shift >= 0) {
    acc |= src << static_cast<std::size_t>(shift);
  } else {
    acc |= src >> static_cast<std::size_t>(-shift);
  }
}

}  // namespace

Int norm_inf(const LatticePoint& x) {
  Int m = 0;
  for (Int c : x) m = std::max(m, c < 0 ? -c : c);
  return m;
}

std::string to_string(Outside::Kind k) {
  switch (k) {
    case Outside::Kind::Empty: return "empty";
    case Outside::Kind::All: return "all";
    case Outside::Kind::NormRay: return "norm_ray";
  }
  return "?";
}

WindowedLatticeSet::WindowedLatticeSet(Int d, Int w, Outside outside) : d_(d), w_(w), outside_(outside) {
  if (d < 1) throw std::invalid_argument("lattice dimension must be >= 1");
  if (w < 0) throw std::invalid_argument("window radius must be >= 0");
  bits_.resize(grid_size(2 * w + 1, d));
}

std::size_t WindowedLatticeSet::index(const LatticePoint& x) const {
  return static_cast<std::size_t>(flat(x, 2 * w_ + 1, w_));
}

LatticePoint WindowedLatticeSet::point_at(std::size_t idx) const { return unflat(idx, d_, 2 * w_ + 1, w_); }

WindowedLatticeSet WindowedLatticeSet::finite(Int d, Int w, const std::vector<LatticePoint>& points) {
  return from_points(d, w, points, {});
}

WindowedLatticeSet WindowedLatticeSet::from_points(Int d, Int w, const std::vector<LatticePoint>& points,
                                                   Outside outside) {
  if (outside.kind == Outside::Kind::NormRay && (outside.q < 1 || outside.q > w))
    throw std::invalid_argument("norm-ray outside rule requires 1 <= q <= W");
  WindowedLatticeSet s(d, w, outside);
  for (const LatticePoint& p : points) {
    require_dimension(p, d);
    if (norm_inf(p) > w) throw std::invalid_argument("point outside the window radius " + std::to_string(w));
    s.bits_.set(s.index(p));
  }
  return s;
}

WindowedLatticeSet WindowedLatticeSet::norm_ray(Int d, Int q, Int w) {
  if (q < 1) throw std::invalid_argument("norm ray requires q >= 1");
  if (q > w) throw std::invalid_argument("norm ray requires q <= W (q = " + std::to_string(q) + ", W = " +
                                         std::to_string(w) + ")");
  WindowedLatticeSet s(d, w, {Outside::Kind::NormRay, q});
  for (std::size_t i = 0; i < s.bits_.size(); ++i)
    if (norm_inf(s.point_at(i)) >= q) s.bits_.set(i);
  return s;
}

WindowedLatticeSet WindowedLatticeSet::all(Int d, Int w) {
  WindowedLatticeSet s(d, w, {Outside::Kind::All, 0});
  s.bits_.set();
  return s;
}

bool WindowedLatticeSet::contains(const LatticePoint& x) const {
  require_dimension(x, d_);
  if (norm_inf(x) > w_) return outside_.kind != Outside::Kind::Empty;
  return bits_.test(index(x));
}

std::vector<LatticePoint> WindowedLatticeSet::points() const {
  std::vector<LatticePoint> out;
  for (std::size_t i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    out.push_back(point_at(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Int> WindowedLatticeSet::ray_radius() const {
  if (is_finite()) return std::nullopt;
  Int r = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (!bits_.test(i)) r = std::max(r, norm_inf(point_at(i)) + 1);
  return r;
}

WindowedLatticeSet WindowedLatticeSet::with_union(const WindowedLatticeSet& other) const {
  if (other.d_ != d_) throw std::invalid_argument("dimension mismatch in lattice union");
  const Int w = std::max(w_, other.w_);
  Outside out = outside_.kind == Outside::Kind::Empty ? other.outside_ : outside_;
  if (outside_.kind != Outside::Kind::Empty && other.outside_.kind != Outside::Kind::Empty &&
      outside_.kind != other.outside_.kind) {
    out = {Outside::Kind::All, 0};
  }
  if (out.kind == Outside::Kind::NormRay && out.q > w) out = {Outside::Kind::All, 0};
  WindowedLatticeSet u(d_, w, out);
  for (std::size_t i = 0; i < u.bits_.size(); ++i) {
    const LatticePoint x = u.point_at(i);
    if (contains(x) || other.contains(x)) u.bits_.set(i);
  }
  return u;
}

bool equals(const WindowedLatticeSet& s, const WindowedLatticeSet& t) {
  if (s.dimension() != t.dimension()) return false;
  if (s.is_finite() != t.is_finite()) return false;
  // Beyond both windows the sets are both empty or both everything.
  const Int w = std::max(s.radius(), t.radius());
  LatticePoint x(s.dimension(), -w);
  while (true) {
    if (s.contains(x) != t.contains(x)) return false;
    Int i = 0;
    while (i < s.dimension() && x[i] == w) x[i++] = -w;
    if (i == s.dimension()) break;
    ++x[i];
  }
  return true;
}

std::vector<LatticePoint> witness_decompose(const LatticePoint& x, Int h, Int q) {
  if (h < 2) throw std::invalid_argument("witness decomposition requires h >= 2");
  if (q < 1) throw std::invalid_argument("witness decomposition requires q >= 1");
  if (x.empty()) throw std::invalid_argument("witness decomposition requires d >= 1");
  const Int shift = checked_mul(h - 1, q);
  LatticePoint y = x;
  LatticePoint z(x.size(), 0);
  if (x[0] >= 0) {
    y[0] = checked_add(x[0], shift);
    z[0] = -q;
  } else {
    y[0] = checked_sub(x[0], shift);
    z[0] = q;
  }
  std::vector<LatticePoint> out{y};
  for (Int i = 1; i < h; ++i) out.push_back(z);
  return out;
}

WindowedLatticeSet windowed_sumset(const WindowedLatticeSet& s, const WindowedLatticeSet& t, Int safe_w) {
  const Int d = s.dimension();
  if (t.dimension() != d) throw std::invalid_argument("dimension mismatch in lattice sumset");
  if (safe_w < 0) throw std::invalid_argument("safe window must be >= 0");
  if (s.is_empty() || t.is_empty()) return WindowedLatticeSet::finite(d, safe_w, {});

  if (!s.is_finite() && !t.is_finite()) {
    // Both contain a norm ray {|x| >= r}; x = y + z with |y|, |z| >= r.
    return WindowedLatticeSet::all(d, safe_w);
  }

  if (s.is_finite() && t.is_finite()) {
    const Int r = s.radius() + t.radius();
    const Int base = 2 * r + 1;
    boost::dynamic_bitset<> tb(grid_size(base, d)), acc(grid_size(base, d));
    for (const LatticePoint& p : t.points()) tb.set(static_cast<std::size_t>(flat(p, base, r)));
    const Int origin = flat(LatticePoint(d, 0), base, r);
    for (const LatticePoint& p : s.points()) or_shifted(acc, tb, flat(p, base, r) - origin);
    std::vector<LatticePoint> pts;
    for (std::size_t i = acc.find_first(); i != boost::dynamic_bitset<>::npos; i = acc.find_next(i)) {
      LatticePoint x = unflat(i, d, base, r);
      if (norm_inf(x) > safe_w)
        throw std::invalid_argument("finite sumset does not fit the safe window " + std::to_string(safe_w) +
                                    " (needs " + std::to_string(norm_inf(x)) + ")");
      pts.push_back(std::move(x));
    }
    return WindowedLatticeSet::finite(d, safe_w, pts);
  }

  const WindowedLatticeSet& ray = s.is_finite() ? t : s;
  const WindowedLatticeSet& fin = s.is_finite() ? s : t;
  const std::vector<LatticePoint> summands = fin.points();
  Int nearest = norm_inf(summands.front());
  for (const LatticePoint& p : summands) nearest = std::min(nearest, norm_inf(p));
  // Every x with |x| > safe_w is x = (x - p) + p with |x - p| >= r.
  const Int r = *ray.ray_radius();
  if (safe_w + 1 - nearest < r)
    throw std::invalid_argument("safe window " + std::to_string(safe_w) + " too small for ray radius " +
                                std::to_string(r) + " shifted by a summand of norm " + std::to_string(nearest));
  std::vector<LatticePoint> inside;
  LatticePoint x(d, -safe_w);
  while (true) {
    for (const LatticePoint& p : summands) {
      LatticePoint y = x;
      for (Int i = 0; i < d; ++i) y[i] -= p[i];
      if (ray.contains(y)) {
        inside.push_back(x);
        break;
      }
    }
    Int i = 0;
    while (i < d && x[i] == safe_w) x[i++] = -safe_w;
    if (i == d) break;
    ++x[i];
  }
  return WindowedLatticeSet::from_points(d, safe_w, inside, {Outside::Kind::All, 0});
}

WindowedLatticeSet windowed_hfold(const WindowedLatticeSet& s, Int h, Int safe_w) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  WindowedLatticeSet acc = s;
  for (Int i = 1; i < h; ++i) acc = windowed_sumset(acc, s, safe_w);
  return acc;
}

BigInt count_reps_n0d(const LatticePoint& n, Int h) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  BigInt prod = 1;
  for (Int c : n) {
    if (c < 0) throw std::invalid_argument("coordinates must be nonnegative, got " + std::to_string(c));
    prod *= binomial(c + h - 1, h - 1);
  }
  return prod;
}

BoxSet::BoxSet(Int d, Int w) : d_(d), w_(w), base_(2 * w + 1) {
  if (d < 1) throw std::invalid_argument("box dimension must be >= 1");
  if (w < 0) throw std::invalid_argument("box size must be >= 0");
  bits_.resize(grid_size(base_, d));
}

BoxSet BoxSet::from_points(Int d, Int w, const std::vector<LatticePoint>& points) {
  BoxSet s(d, w);
  for (const LatticePoint& p : points) s.insert(p);
  return s;
}

std::size_t BoxSet::index(const LatticePoint& x) const {
  require_dimension(x, d_);
  return static_cast<std::size_t>(flat(x, base_, 0));
}

bool BoxSet::contains(const LatticePoint& x) const {
  require_dimension(x, d_);
  for (Int c : x)
    if (c < 0 || c > w_) return false;
  return bits_.test(index(x));
}

void BoxSet::insert(const LatticePoint& x) {
  require_dimension(x, d_);
  for (Int c : x)
    if (c < 0 || c > w_)
      throw std::invalid_argument("point coordinate " + std::to_string(c) + " outside the box [0, " +
                                  std::to_string(w_) + "]");
  bits_.set(index(x));
}

std::vector<LatticePoint> BoxSet::points() const {
  std::vector<LatticePoint> out;
  for (std::size_t i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    out.push_back(unflat(i, d_, base_, 0));
  std::sort(out.begin(), out.end());
  return out;
}

bool BoxSet::subset_of(const BoxSet& other) const {
  if (other.d_ != d_ || other.w_ != w_) throw std::invalid_argument("box shape mismatch");
  return bits_.is_subset_of(other.bits_);
}

BoxSet BoxSet::intersect(const BoxSet& other) const {
  if (other.d_ != d_ || other.w_ != w_) throw std::invalid_argument("box shape mismatch");
  BoxSet out = *this;
  out.bits_ &= other.bits_;
  return out;
}

bool BoxSet::operator==(const BoxSet& other) const {
  return d_ == other.d_ && w_ == other.w_ && bits_ == other.bits_;
}

BoxSet BoxSet::sum(const BoxSet& other) const {
  if (other.d_ != d_ || other.w_ != w_) throw std::invalid_argument("box shape mismatch");
  boost::dynamic_bitset<> acc(bits_.size());
  for (std::size_t i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    acc |= other.bits_ << i;
  // Keep coordinates in [0, W]; sums of box points reach at most 2W.
  BoxSet out(d_, w_);
  for (std::size_t i = acc.find_first(); i != boost::dynamic_bitset<>::npos; i = acc.find_next(i)) {
    std::size_t rest = i;
    bool inside = true;
    for (Int k = 0; k < d_ && inside; ++k) {
      inside = static_cast<Int>(rest % base_) <= w_;
      rest /= base_;
    }
    if (inside) out.bits_.set(i);
  }
  return out;
}

BoxSet BoxSet::hfold(Int h) const {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  BoxSet acc = *this;
  for (Int i = 1; i < h; ++i) acc = acc.sum(*this);
  return acc;
}

StableBoxResult theorem2_check(const std::function<BoxSet(Int)>& rule, Int h, Int max_q,
                              const std::optional<BoxSet>& limit) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  if (max_q < 1) throw std::invalid_argument("truncation Q must be >= 1");
  std::vector<BoxSet> members;
  for (Int q = 1; q <= max_q; ++q) {
    members.push_back(rule(q));
    if (q > 1 && !members.back().subset_of(members[q - 2]))
      throw std::invalid_argument("family is not decreasing: A_" + std::to_string(q) + " not contained in A_" +
                                  std::to_string(q - 1));
  }
  const BoxSet& last = members.back();
  const BoxSet a = limit.value_or(last);
  if (!a.subset_of(last)) throw std::invalid_argument("declared limit is not contained in A_Q");

  BoxSet inter = members.front().hfold(h);
  for (std::size_t i = 1; i < members.size(); ++i) inter = inter.intersect(members[i].hfold(h));
  const BoxSet ha = a.hfold(h);

  // x is unstable when some y <= x lies in A_Q but not in the limit.
  const Int d = a.dimension(), w = a.box();
  std::vector<LatticePoint> all_points;
  std::vector<char> unstable;
  {
    LatticePoint x(d, 0);
    while (true) {
      all_points.push_back(x);
      Int i = 0;
      while (i < d && x[i] == w) x[i++] = 0;
      if (i == d) break;
      ++x[i];
    }
    unstable.assign(all_points.size(), 0);
    // all_points is ordered with coordinate 0 fastest, so x - e_k sits at
    // offset stride_k earlier in the list.
    std::vector<std::size_t> stride(d, 1);
    for (Int k = 1; k < d; ++k) stride[k] = stride[k - 1] * static_cast<std::size_t>(w + 1);
    for (std::size_t idx = 0; idx < all_points.size(); ++idx) {
      const LatticePoint& p = all_points[idx];
      char u = last.contains(p) && !a.contains(p);
      for (Int k = 0; k < d && !u; ++k)
        if (p[k] > 0) u = unstable[idx - stride[k]];
      unstable[idx] = u;
    }
  }

  StableBoxResult result;
  result.holds = true;
  result.box_points = all_points.size();
  for (std::size_t idx = 0; idx < all_points.size(); ++idx) {
    if (unstable[idx]) continue;
    ++result.stable_points;
    if (ha.contains(all_points[idx]) != inter.contains(all_points[idx])) {
      result.holds = false;
      if (!result.mismatch) result.mismatch = all_points[idx];
    }
  }
  return result;
}

BoxSet FadingFiltration::at(Int q) const {
  BoxSet s = limit;
  for (const auto& [p, level] : fading)
    if (q <= level) s.insert(p);
  return s;
}

FadingFiltration random_fading_filtration(Int d, Int w, Int max_q, std::size_t limit_points,
                                          std::size_t fading_points, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> coord(0, w), level(1, max_q + 5);
  auto point = [&] {
    LatticePoint p(d);
    for (Int& c : p) c = coord(rng);
    return p;
  };
  FadingFiltration f{BoxSet(d, w), {}};
  for (std::size_t k = 0; k < limit_points; ++k) f.limit.insert(point());
  for (std::size_t k = 0; k < fading_points; ++k) {
    LatticePoint p = point();
    f.fading.emplace_back(std::move(p), level(rng));
  }
  return f;
}

}  // namespace hfold
