#include "hfold/sumset.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hfold {

namespace {

std::vector<bool> lift_mask(const EpSet& s, Int period, bool right) {
  std::vector<bool> mask(static_cast<std::size_t>(period));
  for (Int r = 0; r < period; ++r)
    mask[r] = right ? s.right_has(r % s.period()) : s.left_has(r % s.period());
  return mask;
}

std::vector<bool> core_mask(const EpSet& s, Int period) {
  std::vector<bool> mask(static_cast<std::size_t>(period));
  for (Int c : s.core()) mask[floor_mod(c, period)] = true;
  return mask;
}

void add_residue_sums(std::vector<bool>& out, const std::vector<bool>& a,
                      const std::vector<bool>& b) {
  const std::size_t p = out.size();
  for (std::size_t i = 0; i < p; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < p; ++j)
      if (b[j]) out[(i + j) % p] = true;
  }
}

// Residues r mod P such that every integer congruent to r lies in S + T
// through a (left ray, right ray) pair.
std::vector<bool> opposite_ray_classes(const EpSet& s, const EpSet& t, Int period) {
  std::vector<bool> out(static_cast<std::size_t>(period), false);
  add_residue_sums(out, lift_mask(s, period, false), lift_mask(t, period, true));
  add_residue_sums(out, lift_mask(s, period, true), lift_mask(t, period, false));
  return out;
}

std::vector<Int> mask_to_list(const std::vector<bool>& mask) {
  std::vector<Int> out;
  for (std::size_t r = 0; r < mask.size(); ++r)
    if (mask[r]) out.push_back(static_cast<Int>(r));
  return out;
}

// Elements of S inside [lo, hi].
std::vector<Int> members_in(const EpSet& s, Int lo, Int hi) {
  std::vector<Int> out;
  if (hi < lo) return out;
  const std::vector<char> m = membership(s, lo, hi);
  for (Int x = lo; x <= hi; ++x)
    if (m[static_cast<std::size_t>(x - lo)]) out.push_back(x);
  return out;
}

// Number of ordered h-tuples from S ∩ [lo, hi] summing to x.
BigInt count_in_box(const EpSet& s, Int h, Int x, Int lo, Int hi) {
  if (hi < lo) return 0;
  const std::vector<Int> elems = members_in(s, lo, hi);
  if (elems.empty()) return 0;
  const Int span = hi - lo;
  // dp[v] counts k-tuples with sum k*lo + v.
  std::vector<BigInt> dp(1, BigInt(1));
  for (Int k = 0; k < h - 1; ++k) {
    std::vector<BigInt> next(dp.size() + static_cast<std::size_t>(span));
    for (std::size_t v = 0; v < dp.size(); ++v) {
      if (dp[v] == 0) continue;
      for (Int e : elems) next[v + static_cast<std::size_t>(e - lo)] += dp[v];
    }
    dp.swap(next);
  }
  BigInt total = 0;
  const Int base = checked_mul(h - 1, lo);
  for (Int e : elems) {
    const Int v = x - e - base;
    if (v >= 0 && v < static_cast<Int>(dp.size())) total += dp[static_cast<std::size_t>(v)];
  }
  return total;
}

// Ordered h-tuples from S ∩ [lo, hi] summing to x in lexicographic order,
// stopping once `limit` tuples are found.
std::vector<std::vector<Int>> enumerate_in_box(const EpSet& s, Int h, Int x, Int lo,
                                               Int hi, std::size_t limit) {
  std::vector<std::vector<Int>> out;
  if (hi < lo || limit == 0) return out;
  const std::vector<Int> elems = members_in(s, lo, hi);
  if (elems.empty()) return out;
  const std::vector<char> is_elem = membership(s, lo, hi);
  const Int span = hi - lo;
  // reach[k][v]: some k-tuple has sum k*lo + v.
  std::vector<std::vector<char>> reach(static_cast<std::size_t>(h));
  reach[0] = {1};
  for (Int k = 1; k < h; ++k) {
    reach[k].assign(reach[k - 1].size() + static_cast<std::size_t>(span), 0);
    for (std::size_t v = 0; v < reach[k - 1].size(); ++v) {
      if (!reach[k - 1][v]) continue;
      for (Int e : elems) reach[k][v + static_cast<std::size_t>(e - lo)] = 1;
    }
  }
  auto reachable = [&](Int k, Int sum) {
    const Int v = sum - k * lo;
    return v >= 0 && v < static_cast<Int>(reach[k].size()) && reach[k][v];
  };

  std::vector<Int> tuple;
  auto dfs = [&](auto&& self, Int remaining) -> void {
    if (out.size() >= limit) return;
    const Int left = h - static_cast<Int>(tuple.size());
    if (left == 1) {
      if (remaining >= lo && remaining <= hi && is_elem[remaining - lo]) {
        tuple.push_back(remaining);
        out.push_back(tuple);
        tuple.pop_back();
      }
      return;
    }
    for (Int e : elems) {
      if (!reachable(left - 1, remaining - e)) continue;
      tuple.push_back(e);
      self(self, remaining - e);
      tuple.pop_back();
      if (out.size() >= limit) return;
    }
  };
  dfs(dfs, x);
  return out;
}

}  // namespace

EpSet minkowski_sum(const EpSet& s, const EpSet& t, SumFlags* flags) {
  if (s.is_empty() || t.is_empty()) {
    if (flags) flags->empty_operand = true;
    return EpSet::empty();
  }
  const Int period = checked_lcm(s.period(), t.period());
  const std::vector<bool> s_left = lift_mask(s, period, false);
  const std::vector<bool> s_right = lift_mask(s, period, true);
  const std::vector<bool> t_left = lift_mask(t, period, false);
  const std::vector<bool> t_right = lift_mask(t, period, true);
  const std::vector<bool> s_core = core_mask(s, period);
  const std::vector<bool> t_core = core_mask(t, period);
  const std::vector<bool> classes = opposite_ray_classes(s, t, period);

  std::vector<bool> right = classes;
  add_residue_sums(right, s_core, t_right);
  add_residue_sums(right, s_right, t_core);
  add_residue_sums(right, s_right, t_right);
  std::vector<bool> left = classes;
  add_residue_sums(left, s_core, t_left);
  add_residue_sums(left, s_left, t_core);
  add_residue_sums(left, s_left, t_left);

  const Int ls = s.window_lo(), rs = s.window_hi();
  const Int lt = t.window_lo(), rt = t.window_hi();
  const Int lo = checked_sub(checked_add(ls, lt), checked_mul(2, period));
  const Int hi = checked_add(checked_add(rs, rt), checked_mul(2, period));

  // A representation x = s + t that is not an opposite-ray pair has
  // s in [x - rt, rs] or s in [ls, x - lt].
  const Int s_from = std::min(checked_sub(lo, rt), ls);
  const Int s_to = std::max(rs, checked_sub(hi, lt));
  const Int t_from = checked_sub(lo, s_to);
  const Int t_to = checked_sub(hi, s_from);
  const std::vector<char> s_bits = membership(s, s_from, s_to);
  const std::vector<char> t_bits = membership(t, t_from, t_to);

  RawEpSet raw;
  raw.period = period;
  raw.lo = lo;
  raw.hi = hi;
  for (Int x = lo; x <= hi; ++x) {
    bool hit = classes[floor_mod(x, period)];
    const Int from = std::min(x - rt, ls);
    const Int to = std::max(rs, x - lt);
    for (Int a = from; !hit && a <= to; ++a)
      hit = s_bits[a - s_from] && t_bits[x - a - t_from];
    if (hit) raw.core.push_back(x);
  }
  raw.left = mask_to_list(left);
  raw.right = mask_to_list(right);
  return normalize(raw);
}

EpSet h_fold(const EpSet& s, Int h, SumFlags* flags) {
  if (h < 1) throw std::invalid_argument("h-fold sumset requires h >= 1");
  EpSet acc = s;
  for (Int k = 2; k <= h; ++k) acc = minkowski_sum(acc, s, flags);
  if (s.is_empty() && flags) flags->empty_operand = true;
  return acc;
}

bool has_infinite_representations(const EpSet& s, Int h, Int x) {
  if (h < 2 || !s.has_left_ray() || !s.has_right_ray()) return false;
  const Int period = s.period();
  const std::vector<bool> classes = opposite_ray_classes(s, s, period);
  const EpSet absorbing = EpSet::residue_classes(period, mask_to_list(classes));
  const EpSet reach = h == 2 ? absorbing : minkowski_sum(h_fold(s, h - 2), absorbing);
  return reach.contains(x);
}

RepCount count_representations(const EpSet& s, Int h, Int x) {
  if (h < 1) throw std::invalid_argument("representation count requires h >= 1");
  if (h == 1) return RepCount::finite(s.contains(x) ? 1 : 0);
  if (has_infinite_representations(s, h, x)) return RepCount::infinite();
  // Without an infinite family no tuple mixes a left-ray and a right-ray
  // element, so every tuple lies entirely in [lo, ...) or (..., hi].
  const Int lo = s.window_lo(), hi = s.window_hi();
  const BigInt above = count_in_box(s, h, x, lo, checked_sub(x, checked_mul(h - 1, lo)));
  const BigInt below = count_in_box(s, h, x, checked_sub(x, checked_mul(h - 1, hi)), hi);
  const BigInt both = count_in_box(s, h, x, lo, hi);
  return RepCount::finite(above + below - both);
}

RepTupleSet enumerate_representations(const EpSet& s, Int h, Int x, std::size_t cap) {
  if (h < 1) throw std::invalid_argument("representation enumeration requires h >= 1");
  if (cap < 1) throw std::invalid_argument("cap must be positive");
  RepTupleSet result;
  result.x = x;
  result.h = h;
  if (h == 1) {
    if (s.contains(x)) result.tuples.push_back({x});
    return result;
  }
  if (has_infinite_representations(s, h, x)) {
    Int radius = checked_add(std::max(window_extent(s), x < 0 ? -x : x), s.period() + 1);
    for (;;) {
      auto found = enumerate_in_box(s, h, x, -radius, radius, cap);
      if (found.size() >= cap) {
        result.tuples = std::move(found);
        result.truncated = true;
        return result;
      }
      radius = checked_mul(radius, 2);
    }
  }
  const Int lo = s.window_lo(), hi = s.window_hi();
  std::set<std::vector<Int>> merged;
  for (auto& tup : enumerate_in_box(s, h, x, lo, checked_sub(x, checked_mul(h - 1, lo)), cap + 1))
    merged.insert(std::move(tup));
  for (auto& tup : enumerate_in_box(s, h, x, checked_sub(x, checked_mul(h - 1, hi)), hi, cap + 1))
    merged.insert(std::move(tup));
  result.truncated = merged.size() > cap;
  for (const auto& tup : merged) {
    if (result.tuples.size() == cap) break;
    result.tuples.push_back(tup);
  }
  return result;
}

std::vector<Int> brute_sumset_window(const EpSet& s, const EpSet& t, Int w) {
  if (w < 1) throw std::invalid_argument("window must be positive");
  std::vector<Int> out;
  if (s.is_empty() || t.is_empty()) return out;
  const Int period = checked_lcm(s.period(), t.period());
  const Int bound = w + std::max(window_extent(s), window_extent(t)) + 2 * period;
  const std::vector<char> a = membership(s, -bound, bound);
  const std::vector<char> b = membership(t, -bound, bound);
  for (Int x = -w; x <= w; ++x) {
    for (Int u = -bound; u <= bound; ++u) {
      const Int v = x - u;
      if (v < -bound || v > bound) continue;
      if (a[u + bound] && b[v + bound]) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

}  // namespace hfold
