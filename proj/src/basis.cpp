#include "hfold/basis.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "hfold/sumset.hpp"

namespace hfold {

EpSet universe_set(Universe u) {
  switch (u) {
    case Universe::Z: return EpSet::all_integers();
    case Universe::N: return EpSet::positive_integers();
    case Universe::N0: return EpSet::nonnegative_integers();
  }
  throw std::invalid_argument("unknown universe");
}

std::string to_string(Universe u) {
  switch (u) {
    case Universe::Z: return "Z";
    case Universe::N: return "N";
    case Universe::N0: return "N0";
  }
  return "?";
}

Universe parse_universe(const std::string& text) {
  if (text == "Z") return Universe::Z;
  if (text == "N") return Universe::N;
  if (text == "N0") return Universe::N0;
  throw std::invalid_argument("unsupported target '" + text + "' (expected Z, N or N0)");
}

std::string to_string(NonbasisResult::Kind k) {
  switch (k) {
    case NonbasisResult::Kind::Yes: return "Yes";
    case NonbasisResult::Kind::No: return "No";
    case NonbasisResult::Kind::Unknown: return "UnknownUpTo";
  }
  return "?";
}

std::string to_string(MaximalityReport::Kind k) {
  switch (k) {
    case MaximalityReport::Kind::IsBasis: return "IsBasis";
    case MaximalityReport::Kind::NotMaximal: return "NotMaximal";
    case MaximalityReport::Kind::MaximalOverProbe: return "MaximalOverProbe";
  }
  return "?";
}

bool is_basis_of_order(const EpSet& a, Int h, Universe target) {
  return h_fold(a, h) == universe_set(target);
}

BasisReport basis_order(const EpSet& a, Universe target, Int h_max) {
  if (h_max < 1) throw std::invalid_argument("h_max must be at least 1");
  const EpSet goal = universe_set(target);
  BasisReport report;
  report.target = target;
  report.h_max = h_max;
  report.identity_note =
      target == Universe::N
          ? "N has no additive identity; per-h results are reported without assuming monotonicity"
          : "target contains 0 (read 'subgroup' as 'semigroup'): order h0 persists only when 0 is in A";
  EpSet acc = a;
  for (Int h = 1; h <= h_max; ++h) {
    if (h > 1) acc = minkowski_sum(acc, a);
    const bool hit = acc == goal;
    report.per_h.push_back(hit);
    if (hit && !report.order) report.order = h;
  }
  if (report.order) {
    report.certificate = std::to_string(*report.order) + "A = " + to_string(target);
  } else {
    report.missing = element_nearest_zero(set_difference(goal, acc));
    report.certificate = "missing " + std::to_string(*report.missing) + " from " +
                         std::to_string(h_max) + "A";
  }
  return report;
}

Int difference_gcd(const EpSet& a) {
  const auto base = element_nearest_zero(a);
  if (!base) return 0;
  Int g = 0;
  auto absorb = [&](Int v) { g = std::gcd(g, v < 0 ? -v : v); };
  for (Int c : a.core()) absorb(c - *base);
  const Int p = a.period();
  if (a.has_left_ray() || a.has_right_ray()) absorb(p);
  for (Int r : a.right_residues()) {
    const Int start = a.window_hi() + 1;
    absorb(start + floor_mod(r - start, p) - *base);
  }
  for (Int r : a.left_residues()) {
    const Int top = a.window_lo() - 1;
    absorb(top - floor_mod(top - r, p) - *base);
  }
  return g;
}

NonbasisResult is_nonbasis_forever(const EpSet& a, Universe target, Int h_max) {
  using K = NonbasisResult::Kind;
  if (a.is_empty()) return {K::Yes, "empty set", 0};
  const Extremum lo = minimum(a);
  const Extremum hi = maximum(a);
  if (target == Universe::Z) {
    if (lo.finite()) return {K::Yes, "bounded below", 0};
    if (hi.finite()) return {K::Yes, "bounded above", 0};
  } else {
    const Int floor_value = target == Universe::N ? 1 : 0;
    if (!lo.finite() || lo.value < floor_value)
      return {K::Yes, "element below the least element of " + to_string(target), 0};
    if (hi.finite()) return {K::Yes, "bounded above", 0};
  }
  const Int g = difference_gcd(a);
  if (g > 1) return {K::Yes, "common divisor " + std::to_string(g), 0};
  const BasisReport report = basis_order(a, target, h_max);
  if (report.order) return {K::No, "", *report.order};
  return {K::Unknown, "", h_max};
}

MultiplesMaximality multiples_maximal_nonbasis(Int h) {
  if (h < 2) throw std::invalid_argument("multiples_maximal_nonbasis requires h >= 2");
  MultiplesMaximality out;
  out.h = h;
  for (Int b = 1; b < h && !out.witness; ++b) {
    std::set<Int> reached;
    for (Int k = 0; k <= h; ++k) reached.insert((k * b) % h);
    if (static_cast<Int>(reached.size()) != h) out.witness = b;
  }
  const bool nonbasis = h_fold(EpSet::dilate(h), h) != EpSet::all_integers();
  out.maximal = nonbasis && !out.witness;
  return out;
}

std::vector<Int> maximality_candidates(const EpSet& a) {
  std::vector<Int> out;
  const Int p = a.period();
  const Int from = checked_sub(a.window_lo(), p);
  const Int to = checked_add(a.window_hi(), p);
  for (Int b = from; b <= to; ++b)
    if (!a.contains(b)) out.push_back(b);
  // Probe order: by |b|, positive before negative.
  std::sort(out.begin(), out.end(), [](Int x, Int y) {
    const Int ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
    return ax != ay ? ax < ay : x > y;
  });
  return out;
}

MaximalityReport maximality_probe(const EpSet& a, Int h, Universe target) {
  const EpSet goal = universe_set(target);
  MaximalityReport report;
  if (h_fold(a, h) == goal) {
    report.kind = MaximalityReport::Kind::IsBasis;
    return report;
  }
  for (Int b : maximality_candidates(a)) {
    if (!goal.contains(b)) continue;
    ++report.probed;
    if (h_fold(set_union(a, EpSet::from_finite({b})), h) != goal) {
      report.kind = MaximalityReport::Kind::NotMaximal;
      report.witness = b;
      return report;
    }
  }
  report.kind = MaximalityReport::Kind::MaximalOverProbe;
  return report;
}

}  // namespace hfold
