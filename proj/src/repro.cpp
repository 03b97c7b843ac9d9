#include "hfold/repro.hpp"

#include "hfold/basis.hpp"
#include "hfold/expr.hpp"
#include "hfold/family.hpp"
#include "hfold/lattice.hpp"
#include "hfold/rset.hpp"
#include "hfold/sumset.hpp"

namespace hfold {

namespace {

// Collects the first failed expectation.
class Expect {
 public:
  void operator()(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  const std::string& result() const { return failure_; }

 private:
  std::string failure_;
};

EpSet fin(std::vector<Int> v) { return EpSet::from_finite(std::move(v)); }

EpSet chain_set() { return set_union(fin({-1}), EpSet::ap(0, 3)); }

std::string sharp_membership() {
  Expect e;
  e(EpSet::abs_geq(3).contains(3), "3 not in A♯_3");
  e(!EpSet::abs_geq(3).contains(2), "2 in A♯_3");
  const EpSet member = set_union(fin({0, 1, 4}), EpSet::abs_geq(3));
  e(!member.contains(2), "2 in A ∪ A♯_3");
  e(member.contains(-5), "-5 not in A ∪ A♯_3");
  e(minimum(EpSet::abs_geq(3)).kind == Extremum::Kind::Infinite, "A♯_3 bounded below");
  for (Int q = 1; q <= 20; ++q)
    e(is_subset(fin({0, 1, 4}), set_union(fin({0, 1, 4}), EpSet::abs_geq(q))), "A not in A_" + std::to_string(q));
  return e.result();
}

std::string flat_member() {
  Expect e;
  const EpSet r = EpSet::ray_geq(5);
  e(minimum(r) == Extremum{Extremum::Kind::Finite, 5}, "min(ray_geq(5)) != 5");
  e(is_subset(r, EpSet::positive_integers()), "ray_geq(5) not in N");
  e(r.contains(5) && !r.contains(4), "ray_geq(5) membership");
  return e.result();
}

std::string sharp_hfold_is_z() {
  Expect e;
  for (Int h = 2; h <= 6; ++h)
    for (Int q = 1; q <= 20; ++q)
      e(h_fold(EpSet::abs_geq(q), h).is_all(),
        "h A♯_q != Z at h = " + std::to_string(h) + ", q = " + std::to_string(q));
  return e.result();
}

std::string n0_reps() {
  Expect e;
  e(count_representations(EpSet::nonnegative_integers(), 3, 4) == RepCount::finite(15), "r(4) != 15");
  e(enumerate_representations(EpSet::nonnegative_integers(), 3, 4, 100).tuples.size() == 15, "15 tuples");
  e(count_reps_n0d({4, 4}, 3) == 225, "r((4,4)) != 225");
  return e.result();
}

std::string n_order_one_only() {
  Expect e;
  const BasisReport r = basis_order(EpSet::positive_integers(), Universe::N, 3);
  e(r.order == 1, "N not of order 1 for N");
  e(!is_basis_of_order(EpSet::positive_integers(), 2, Universe::N), "2N = N");
  return e.result();
}

std::string bounded_below_nonbasis() {
  const NonbasisResult r = is_nonbasis_forever(chain_set(), Universe::Z);
  if (r.kind != NonbasisResult::Kind::Yes || r.reason != "bounded below")
    return "got " + to_string(r.kind) + " (" + r.reason + ")";
  return "";
}

std::string multiples_maximal() {
  Expect e;
  e(multiples_maximal_nonbasis(2).maximal, "2Z not maximal");
  e(multiples_maximal_nonbasis(3).maximal, "3Z not maximal");
  const MultiplesMaximality four = multiples_maximal_nonbasis(4);
  e(!four.maximal && four.witness == 2, "4Z: expected witness 2");
  e(maximality_probe(EpSet::dilate(3), 3, Universe::Z).kind == MaximalityReport::Kind::MaximalOverProbe,
    "probe of 3Z not maximal");
  return e.result();
}

std::string sharp_family_members() {
  Expect e;
  const SetFamily f = builtin_sharp_family(fin({0, 1, 4}));
  e(f.at(2).contains(-2) && !f.at(3).contains(-2), "rule(2)/rule(3) at -2");
  const TruncatedIntersection t = truncated_intersection(f, 30);
  e(t.set == set_union(fin({0, 1, 4}), EpSet::abs_geq(30)), "running intersection != A ∪ A♯_Q");
  e(!t.stabilized_at.has_value(), "running intersection stabilized");
  const TruncatedIntersection s = truncated_sumset_intersection(f, 2, 30);
  e(s.set.is_all() && s.stabilized_at == 1, "sumset intersection != Z from q = 1");
  return e.result();
}

std::string flat_family_strict() {
  Expect e;
  const SetFamily f = builtin_flat_family(chain_set());
  const DecreasingReport r = check_decreasing(f, 30);
  for (Int q = 1; q < 30; ++q) {
    const bool step = std::find(r.strict_steps.begin(), r.strict_steps.end(), q) != r.strict_steps.end();
    e(step == !chain_set().contains(q), "strict step mismatch at q = " + std::to_string(q));
  }
  e(r.decreasing && r.asymptotically_strictly, "flat family not asymptotically strict");
  return e.result();
}

std::string sharp_verdicts() {
  Expect e;
  const SetFamily f = builtin_sharp_family(fin({0, 1, 4}));
  const EpSet two_a = h_fold(fin({0, 1, 4}), 2);
  const Verdict v = equality_verdict(f, 2, 20);
  e(v.status == VerdictStatus::ProperInclusionCertified, "h = 2: " + v.label());
  e(v.witness && !two_a.contains(*v.witness), "witness in 2A");
  const Classification c = classify_h_set(f, 6, 50);
  for (const Verdict& u : c.verdicts)
    if (u.h >= 2) e(u.status == VerdictStatus::ProperInclusionCertified && u.witness, "h = " + std::to_string(u.h));
  return e.result();
}

std::string flat_squeeze() {
  Expect e;
  const SetFamily f = builtin_flat_family(chain_set());
  const Verdict v = equality_verdict(f, 3, 30);
  e(v.status == VerdictStatus::EqualityCertified && v.certificate == "squeeze", "h = 3: " + v.label());
  for (const Verdict& u : classify_h_set(f, 5, 60).verdicts)
    e(u.status == VerdictStatus::EqualityCertified, "h = " + std::to_string(u.h) + ": " + u.label());
  for (Int h = 1; h <= 5; ++h)
    for (Int q = 1; q <= 60; ++q)
      e(theorem5_chain_check(chain_set(), h, q).holds(), "chain fails at h = " + std::to_string(h));
  return e.result();
}

std::string basis_limit() {
  const SetFamily f = builtin_sharp_family(set_union(fin({0}), EpSet::abs_geq(3)));
  const Verdict v = equality_verdict(f, 2, 20);
  if (v.status != VerdictStatus::EqualityCertified || v.certificate != "basis") return v.label();
  return "";
}

std::string norm_rays() {
  Expect e;
  const WindowedLatticeSet r = WindowedLatticeSet::norm_ray(2, 3, 6);
  e(r.contains({3, 0}) && !r.contains({2, 2}), "membership in norm ray");
  const std::vector<LatticePoint> w = witness_decompose({0}, 2, 3);
  e(w.size() == 2 && w[0] == LatticePoint{3} && w[1] == LatticePoint{-3}, "decomposition of 0");
  for (Int q = 1; q <= 4; ++q) {
    const WindowedLatticeSet a =
        WindowedLatticeSet::norm_ray(2, q, 8).with_union(WindowedLatticeSet::finite(2, 8, {{0, 0}, {1, 2}}));
    const WindowedLatticeSet s = windowed_hfold(a, 2, 8);
    e(equals(s, WindowedLatticeSet::all(2, 8)), "2(A ∪ norm ray) != all at q = " + std::to_string(q));
  }
  return e.result();
}

std::string dsl_examples() {
  Expect e;
  const SetFamily f = eval_family(parse("fin{0,1,4} | abs_geq(q)"));
  e(f.shape == FamilyShape::SharpUnion && f.declared_limit == fin({0, 1, 4}), "sharp family not recognized");
  e(eval(*parse("sum(2, abs_geq(3))")).is_all(), "sum(2, abs_geq(3)) != Z");
  e(eval(*parse("abs_geq(q)"), 3) == EpSet::abs_geq(3), "abs_geq(q) at 3");
  return e.result();
}

std::string interval_example() {
  Expect e;
  const CompactFamily f = parse_compact_family("[0, 1 + 1/q] | [3, 4]");
  const HausdorffCheck h = theorem6_check(f, 2, 30);
  e(h.equality_certified && h.trace_nonincreasing, "equality not certified");
  e(h.h_limit == IntervalUnion({{0, 2}, {3, 5}, {6, 8}}), "limit sumset " + h.h_limit.str());
  const MeasureCheck m = theorem8_check(f, 2, 30);
  e(m.verified && m.theta == 6 && m.trace_nonincreasing, "theta");
  e(m.theta_trace[0] == 8, "theta at q = 1");
  for (Int q = 2; q <= 30; ++q) e(m.theta_trace[q - 1] == 6 + Rational(3, q), "theta at q = " + std::to_string(q));
  return e.result();
}

std::string multiples_of_five() {
  Expect e;
  const EpSet a = EpSet::dilate(5);
  std::vector<SetFamily> families = {builtin_sharp_family(a), builtin_flat_family(a)};
  families.push_back(generic_family("5Z ∪ (1 + 5Z) tail", [a](Int q) {
    return set_union(a, set_intersect(translate(a, 1), EpSet::abs_geq(5 * q)));
  }, a, Monotonicity::Decreasing));
  for (const SetFamily& f : families) {
    const Verdict v = equality_verdict(f, 5, 30);
    e(v.status != VerdictStatus::EqualityCertified, f.name + ": " + v.label());
  }
  return e.result();
}

}  // namespace

std::vector<ReproCheck> repro_checks() {
  return {
      {"sharp-membership", "A♯_q = {|r| >= q}; A ⊆ A ∪ A♯_q; A♯_q unbounded below", sharp_membership},
      {"flat-member", "ray_geq(q) = {r in N : r >= q}", flat_member},
      {"sharp-hfold", "h A♯_q = Z for 2 <= h <= 6, q <= 20", sharp_hfold_is_z},
      {"n0-representations", "r_{N0,h}(n) = C(n+h-1, h-1), coordinatewise on N0^d", n0_reps},
      {"n-order-one", "N is a basis of order 1 for N but 2N != N", n_order_one_only},
      {"bounded-below", "{-1} ∪ 3N0 is never a basis for Z", bounded_below_nonbasis},
      {"multiples-maximal", "hZ is a maximal nonbasis iff h is prime", multiples_maximal},
      {"sharp-family", "∩ A_q = A while ∩ 2A_q = Z", sharp_family_members},
      {"flat-strict", "A_q != A_{q+1} exactly when q ∉ A", flat_family_strict},
      {"sharp-proper", "hA != Z = ∩ hA_q for h >= 2", sharp_verdicts},
      {"flat-squeeze", "hA = ∩ hA_q for all h via the tail chain", flat_squeeze},
      {"basis-limit", "a basis of order h as limit gives equality", basis_limit},
      {"norm-ray", "h(A ∪ A♯_{q,d}) = Z^d and the decomposition y + (h-1)z", norm_rays},
      {"dsl", "expressions for the sharp family and h A♯_q", dsl_examples},
      {"intervals", "[0, 1+1/q] ∪ [3, 4]: limit sumset and theta = 6 + 3/q", interval_example},
      {"multiples-of-five", "decreasing families with limit 5Z fail equality at h = 5", multiples_of_five},
  };
}

std::vector<ReproOutcome> run_repro() {
  std::vector<ReproOutcome> out;
  for (const ReproCheck& c : repro_checks()) {
    ReproOutcome o{c.name, c.claim, false, ""};
    try {
      o.detail = c.run();
      o.passed = o.detail.empty();
    } catch (const std::exception& ex) {
      o.detail = std::string("exception: ") + ex.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace hfold
