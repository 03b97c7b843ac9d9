#include "hfold/family.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hfold/sumset.hpp"

namespace hfold {

std::string to_string(FamilyShape s) {
  switch (s) {
    case FamilyShape::Generic: return "generic";
    case FamilyShape::Constant: return "constant";
    case FamilyShape::SharpUnion: return "sharp";
    case FamilyShape::FlatUnion: return "flat";
  }
  return "?";
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::EqualityCertified: return "EqualityCertified";
    case VerdictStatus::ProperInclusionCertified: return "ProperInclusionCertified";
    case VerdictStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

std::string Verdict::label() const {
  if (certificate.empty()) return to_string(status);
  return to_string(status) + "[" + certificate + "]";
}

EpSet SetFamily::at(Int q) const {
  if (q < 1) throw std::invalid_argument("family index q must be >= 1");
  return rule(q);
}

SetFamily builtin_sharp_family(const EpSet& a) {
  SetFamily f;
  f.name = "A ∪ A♯_q";
  f.rule = [a](Int q) { return set_union(a, EpSet::abs_geq(q)); };
  f.declared_limit = a;
  f.claim = Monotonicity::Decreasing;
  f.shape = FamilyShape::SharpUnion;
  f.base = a;
  return f;
}

SetFamily builtin_flat_family(const EpSet& a) {
  SetFamily f;
  f.name = "A ∪ A♭_q";
  f.rule = [a](Int q) { return set_union(a, EpSet::ray_geq(std::max<Int>(q, 1))); };
  f.declared_limit = a;
  f.claim = Monotonicity::Decreasing;
  f.shape = FamilyShape::FlatUnion;
  f.base = a;
  return f;
}

SetFamily constant_family(const EpSet& a) {
  SetFamily f;
  f.name = "A";
  f.rule = [a](Int) { return a; };
  f.declared_limit = a;
  f.claim = Monotonicity::Decreasing;
  f.shape = FamilyShape::Constant;
  f.base = a;
  return f;
}

SetFamily generic_family(std::string name, std::function<EpSet(Int)> rule,
                         std::optional<EpSet> limit, Monotonicity claim) {
  SetFamily f;
  f.name = std::move(name);
  f.rule = std::move(rule);
  f.declared_limit = std::move(limit);
  f.claim = claim;
  return f;
}

namespace {

// Members and their h-fold sumsets, computed once per (q, h).
class Probe {
 public:
  Probe(const SetFamily& f, Int max_q) : family_(f), max_q_(max_q) {
    if (max_q < 1) throw std::invalid_argument("truncation Q must be >= 1");
  }

  const EpSet& member(Int q) {
    auto it = members_.find(q);
    if (it == members_.end()) it = members_.emplace(q, family_.at(q)).first;
    return it->second;
  }

  const EpSet& fold(Int q, Int h) {
    if (h < 1) throw std::invalid_argument("h must be >= 1");
    std::vector<EpSet>& folds = folds_[q];
    if (folds.empty()) folds.push_back(member(q));
    while (static_cast<Int>(folds.size()) < h) folds.push_back(minkowski_sum(folds.back(), member(q)));
    return folds[h - 1];
  }

  const EpSet& limit_fold(Int h) {
    if (limit_folds_.empty()) limit_folds_.push_back(*family_.declared_limit);
    while (static_cast<Int>(limit_folds_.size()) < h)
      limit_folds_.push_back(minkowski_sum(limit_folds_.back(), *family_.declared_limit));
    return limit_folds_[h - 1];
  }

  TruncatedIntersection intersect_folds(Int h) {
    TruncatedIntersection out{fold(1, h), std::nullopt};
    Int last_change = 1;
    for (Int q = 2; q <= max_q_; ++q) {
      EpSet next = set_intersect(out.set, fold(q, h));
      if (next != out.set) last_change = q;
      out.set = std::move(next);
    }
    if (last_change < max_q_ || max_q_ == 1) out.stabilized_at = last_change;
    return out;
  }

  Int max_q() const { return max_q_; }
  const SetFamily& family() const { return family_; }

 private:
  const SetFamily& family_;
  Int max_q_;
  std::map<Int, EpSet> members_;
  std::map<Int, std::vector<EpSet>> folds_;
  std::vector<EpSet> limit_folds_;
};

void validate_with(Probe& probe, std::optional<Int> window) {
  const SetFamily& f = probe.family();
  if (!f.declared_limit) return;
  const EpSet& limit = *f.declared_limit;
  for (Int q = 1; q <= probe.max_q(); ++q)
    if (!is_subset(limit, probe.member(q)))
      throw FamilyError("declared limit is not contained in A_" + std::to_string(q) + " of " + f.name);
  if (f.claim == Monotonicity::Decreasing) {
    for (Int q = 1; q < probe.max_q(); ++q)
      if (!is_subset(probe.member(q + 1), probe.member(q)))
        throw FamilyError("family " + f.name + " claimed decreasing but A_" + std::to_string(q + 1) +
                          " is not contained in A_" + std::to_string(q));
  }
  const Int w = window.value_or(std::max<Int>(probe.max_q() - 1, 0));
  const EpSet box = set_intersect(EpSet::ray_geq(-w), EpSet::ray_leq(w));
  EpSet running = probe.member(1);
  for (Int q = 2; q <= probe.max_q(); ++q) running = set_intersect(running, probe.member(q));
  if (set_intersect(running, box) != set_intersect(limit, box))
    throw FamilyError("truncated intersection of " + f.name + " disagrees with the declared limit on [-" +
                      std::to_string(w) + ", " + std::to_string(w) + "]");
}

// A ⊊ A_q for every q >= 1, decided from the structure of the family.
bool strictly_above_limit_for_all_q(const SetFamily& f) {
  if (!f.base) return false;
  const EpSet outside = set_complement(*f.base);
  switch (f.shape) {
    case FamilyShape::SharpUnion: return !outside.is_finite();
    case FamilyShape::FlatUnion: return outside.has_right_ray();
    default: return false;
  }
}

ChainCheck chain_from_folds(const EpSet& a, const EpSet& ha, const EpSet& haq, Int h, Int q, Int offset) {
  ChainCheck c;
  c.min_element = minimum(a).value;
  c.raw_threshold = checked_add(checked_add(q, checked_mul(h - 1, c.min_element)), offset);
  c.clamped = c.raw_threshold < 1;
  c.threshold = std::max<Int>(c.raw_threshold, 1);
  c.lower_holds = is_subset(ha, haq);
  c.upper_holds = is_subset(haq, set_union(ha, EpSet::ray_geq(c.threshold)));
  return c;
}

std::string gap_summary(const EpSet& gap) {
  const auto near = element_nearest_zero(gap);
  std::ostringstream os;
  os << "gap ∩_{q<=Q} hA_q \\ hA: " << describe(gap);
  if (near) os << " (nearest to 0: " << *near << ")";
  return os.str();
}

// Largest m such that the two sets agree on [0, m], capped at `cap`.
Int agreement_prefix(const EpSet& a, const EpSet& b, Int cap) {
  Int m = -1;
  while (m < cap && a.contains(m + 1) == b.contains(m + 1)) ++m;
  return m;
}

Verdict verdict_with(Probe& probe, Int h) {
  const SetFamily& f = probe.family();
  const Int max_q = probe.max_q();
  const EpSet& limit = *f.declared_limit;
  Verdict v;
  v.h = h;
  v.truncation = max_q;

  if (h == 1) {
    v.status = VerdictStatus::EqualityCertified;
    v.certificate = "limit";
    v.evidence = "1A = A = ∩ A_q by the declared limit (validated for q <= " + std::to_string(max_q) + ")";
    return v;
  }
  if (f.shape == FamilyShape::Constant) {
    v.status = VerdictStatus::EqualityCertified;
    v.certificate = "constant";
    v.evidence = "A_q = A for all q";
    return v;
  }

  const EpSet& ha = probe.limit_fold(h);
  const EpSet universe = universe_set(f.universe);

  // (a) basis of order h.
  if (ha == universe) {
    v.status = VerdictStatus::EqualityCertified;
    v.certificate = "basis";
    v.evidence = std::to_string(h) + "A = " + to_string(f.universe) + ", so hA ⊆ hA_q ⊆ " +
                 to_string(f.universe) + " forces hA_q = hA";
    return v;
  }

  // (b) proper inclusion: hA_q is the whole universe for every q.
  const TruncatedIntersection inter = probe.intersect_folds(h);
  if (f.universe == Universe::Z && inter.set == universe && inter.stabilized_at) {
    std::string proof;
    if (f.shape == FamilyShape::SharpUnion) {
      proof = "sharp: A♯_q ⊆ A_q and hA♯_q = Z for every q (y + (h-1)z decomposition)";
    } else if (maximality_probe(limit, h, Universe::Z).kind == MaximalityReport::Kind::MaximalOverProbe) {
      if (strictly_above_limit_for_all_q(f)) {
        proof = "maximal nonbasis: A ⊊ A_q for every q, so hA_q = Z";
      } else {
        v.evidence = "A is a maximal nonbasis of order " + std::to_string(h) +
                     " and A ⊊ A_q for q <= Q, but strictness for all q is not established";
      }
    }
    if (!proof.empty()) {
      v.status = VerdictStatus::ProperInclusionCertified;
      v.certificate = f.shape == FamilyShape::SharpUnion ? "sharp" : "maximal-nonbasis";
      v.witness = element_nearest_zero(set_difference(universe, ha));
      v.evidence = proof + "; stabilized at q = " + std::to_string(*inter.stabilized_at) + "; witness " +
                   std::to_string(*v.witness) + " is not in hA";
      return v;
    }
  }

  // (c) squeeze between hA and hA ∪ T_q with thresholds tending to infinity.
  if (f.shape == FamilyShape::FlatUnion && f.base) {
    bool applicable = true;
    try {
      check_chain_preconditions(*f.base);
    } catch (const ChainPreconditionError&) {
      applicable = false;
    }
    if (applicable) {
      bool all_hold = true;
      Int clamped_up_to = 0;
      std::vector<Int> thresholds;
      for (Int q = 1; q <= max_q && all_hold; ++q) {
        const ChainCheck c = chain_from_folds(*f.base, ha, probe.fold(q, h), h, q, 0);
        all_hold = c.holds();
        thresholds.push_back(c.threshold);
        if (c.clamped) clamped_up_to = q;
      }
      if (all_hold) {
        const Int a_star = minimum(*f.base).value;
        v.status = VerdictStatus::EqualityCertified;
        v.certificate = "squeeze";
        v.tail_thresholds = std::move(thresholds);
        std::ostringstream os;
        os << "hA ⊆ hA_q ⊆ hA ∪ {r in N : r >= q + (h-1)a*} with a* = " << a_star
           << " verified for q <= " << max_q << "; thresholds q " << (a_star * (h - 1) < 0 ? "- " : "+ ")
           << (a_star * (h - 1) < 0 ? -a_star * (h - 1) : a_star * (h - 1))
           << " grow without bound, so ∩ T_q = ∅";
        if (clamped_up_to > 0) os << "; threshold clamped to 1 for q <= " << clamped_up_to;
        v.evidence = os.str();
        return v;
      }
    }
  }

  // (d) finite representation functions: all members inside N0.
  const EpSet n0 = EpSet::nonnegative_integers();
  bool inside_n0 = is_subset(limit, n0);
  for (Int q = 1; q <= max_q && inside_n0; ++q) inside_n0 = is_subset(probe.member(q), n0);
  const bool decreasing_known = f.shape != FamilyShape::Generic || f.claim == Monotonicity::Decreasing;
  if (inside_n0 && decreasing_known) {
    v.status = VerdictStatus::EqualityCertified;
    v.certificate = "finite-reps";
    const Int prefix = agreement_prefix(inter.set, ha, 1000000);
    v.evidence = "ambient N0 with r_{N0,h}(n) = C(n+h-1, h-1) finite for every n; A_q ⊆ A_1 ⊆ N0 "
                 "verified; truncated intersection agrees with hA on [0, " +
                 std::to_string(prefix) + "]";
    return v;
  }

  // (e) undetermined.
  v.status = VerdictStatus::Undetermined;
  const EpSet gap = set_difference(inter.set, ha);
  std::string note = gap.is_empty() ? "truncated intersection equals hA but no certificate covers q > Q"
                                    : gap_summary(gap);
  v.evidence = v.evidence.empty() ? note : v.evidence + "; " + note;
  return v;
}

}  // namespace

DecreasingReport check_decreasing(const SetFamily& f, Int max_q) {
  if (max_q < 2) throw std::invalid_argument("check_decreasing requires Q >= 2");
  Probe probe(f, max_q);
  DecreasingReport r;
  for (Int q = 1; q < max_q; ++q) {
    const EpSet& cur = probe.member(q);
    const EpSet& next = probe.member(q + 1);
    if (!is_subset(next, cur)) {
      r.decreasing = false;
      if (!r.first_violation) r.first_violation = q;
    }
    if (next != cur) {
      r.strict_steps.push_back(q);
    } else {
      r.strictly = false;
    }
  }
  r.strictly = r.strictly && r.decreasing;
  if (f.shape != FamilyShape::Generic && f.base) {
    r.asymptotic_is_symbolic = true;
    r.asymptotically_strictly = f.shape != FamilyShape::Constant && strictly_above_limit_for_all_q(f);
  } else {
    const Int half = (max_q + 1) / 2;
    r.asymptotically_strictly =
        r.decreasing && std::any_of(r.strict_steps.begin(), r.strict_steps.end(), [&](Int q) { return q >= half; });
  }
  return r;
}

TruncatedIntersection truncated_intersection(const SetFamily& f, Int max_q) {
  Probe probe(f, max_q);
  return probe.intersect_folds(1);
}

TruncatedIntersection truncated_sumset_intersection(const SetFamily& f, Int h, Int max_q) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  Probe probe(f, max_q);
  return probe.intersect_folds(h);
}

void validate_family(const SetFamily& f, Int max_q, std::optional<Int> window) {
  Probe probe(f, max_q);
  validate_with(probe, window);
}

Verdict equality_verdict(const SetFamily& f, Int h, Int max_q) {
  if (!f.declared_limit) throw FamilyError("equality verdict requires a declared limit");
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  Probe probe(f, max_q);
  validate_with(probe, std::nullopt);
  return verdict_with(probe, h);
}

Classification classify_h_set(const SetFamily& f, Int h_max, Int max_q) {
  if (!f.declared_limit) throw FamilyError("classification requires a declared limit");
  if (h_max < 1) throw std::invalid_argument("h_max must be >= 1");
  Probe probe(f, max_q);
  validate_with(probe, std::nullopt);
  Classification c;
  for (Int h = 1; h <= h_max; ++h) c.verdicts.push_back(verdict_with(probe, h));
  for (Int h = 1; h < h_max; ++h) {
    const Verdict& lo = c.verdicts[h - 1];
    const Verdict& hi = c.verdicts[h];
    if (lo.status == VerdictStatus::Undetermined || hi.status == VerdictStatus::Undetermined) continue;
    const bool eq_lo = lo.status == VerdictStatus::EqualityCertified;
    const bool eq_hi = hi.status == VerdictStatus::EqualityCertified;
    if (eq_lo && !eq_hi) {
      c.upward_transfer_holds = false;
      c.transfer_notes.push_back("equality at h = " + std::to_string(h) + " but not at h = " + std::to_string(h + 1));
    }
    if (eq_hi && !eq_lo) {
      c.downward_transfer_holds = false;
      c.transfer_notes.push_back("equality at h = " + std::to_string(h + 1) + " but not at h = " + std::to_string(h));
    }
  }
  return c;
}

void check_chain_preconditions(const EpSet& a) {
  using P = ChainPrecondition;
  const Extremum mn = minimum(a);
  if (mn.kind == Extremum::Kind::Empty) throw ChainPreconditionError(P::Empty, "A is empty");
  if (!mn.finite()) throw ChainPreconditionError(P::NotBoundedBelow, "A is not bounded below");
  if (mn.value >= 0) throw ChainPreconditionError(P::MinimumNotNegative, "min(A) is not negative");
  if (a.is_finite()) throw ChainPreconditionError(P::Finite, "A is finite");
  for (Int r = 0; r < a.period(); ++r)
    if (!a.right_has(r)) return;
  throw ChainPreconditionError(P::ContainsAllLargeIntegers, "A contains all sufficiently large integers");
}

ChainCheck theorem5_chain_check(const EpSet& a, Int h, Int q, Int threshold_offset) {
  if (h < 1 || q < 1) throw std::invalid_argument("theorem5_chain_check requires h, q >= 1");
  check_chain_preconditions(a);
  const EpSet aq = set_union(a, EpSet::ray_geq(q));
  return chain_from_folds(a, h_fold(a, h), h_fold(aq, h), h, q, threshold_offset);
}

}  // namespace hfold
