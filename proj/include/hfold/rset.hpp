#ifndef HFOLD_RSET_HPP
#define HFOLD_RSET_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfold/integer.hpp"
#include "hfold/polynomial.hpp"

namespace hfold {

struct Interval {
  Rational lo;
  Rational hi;

  bool operator==(const Interval&) const = default;
};

/// Finite union of closed rational intervals, kept sorted with touching or
/// overlapping pieces merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return ivs_; }
  bool is_empty() const { return ivs_.empty(); }
  bool contains(const Rational& x) const;
  bool is_subset_of(const IntervalUnion& other) const;

  bool operator==(const IntervalUnion&) const = default;

  /// "[0, 2] | [3, 5]"; "empty" for the empty union.
  std::string str() const;

 private:
  std::vector<Interval> ivs_;
};

IntervalUnion iu_minkowski(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion iu_hfold(const IntervalUnion& s, Int h);
IntervalUnion iu_intersect(const IntervalUnion& a, const IntervalUnion& b);
Rational iu_measure(const IntervalUnion& s);
/// Exact Hausdorff distance between nonempty unions.
Rational iu_hausdorff(const IntervalUnion& a, const IntervalUnion& b);

struct SymbolicInterval {
  RationalFunction lo;
  RationalFunction hi;
};

/// A_q = union of template intervals with endpoints rational in q.
struct CompactFamily {
  std::vector<SymbolicInterval> intervals;
  /// The relative order of all endpoints must be fixed from this q on.
  Int pattern_threshold = 1000;
  /// Members checked for A_{q+1} ⊆ A_q and nonemptiness.
  Int probe_q = 64;

  std::string str() const;
};

class CompactFamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "[0, 1 + 1/q] | [3, 4]"; endpoints are rational expressions in q.
CompactFamily parse_compact_family(const std::string& text);
RationalFunction parse_rational_function(const std::string& text);

IntervalUnion family_instantiate(const CompactFamily& f, Int q);

/// Least q0 from which the relative order of the given endpoint functions
/// no longer changes.
Int stable_order_from(const std::vector<RationalFunction>& endpoints);

/// Checks the family (endpoint limits finite, members nonempty and
/// decreasing for q <= probe_q, stable pattern) and returns ∩ A_q from the
/// endpoint limits; the limit is cross-checked on rational probe points.
/// Throws CompactFamilyError.
IntervalUnion family_limit(const CompactFamily& f);

/// Union of symbolic intervals with a fixed merge pattern for q >= from.
struct SymbolicUnion {
  std::vector<SymbolicInterval> intervals;
  Int from = 1;
};

/// h-fold sum of the template, merged under the eventual order of its
/// endpoints. Throws CompactFamilyError if the order settles after
/// pattern_threshold.
SymbolicUnion symbolic_hfold(const CompactFamily& f, Int h);

struct HausdorffCheck {
  bool equality_certified = false;
  IntervalUnion h_limit;
  std::optional<IntervalUnion> symbolic_limit;
  std::optional<Int> pattern_from;
  /// H(∩_{q<=Q'} hA_q, hA) for Q' = 1..Q.
  std::vector<Rational> hausdorff_trace;
  bool trace_nonincreasing = false;
  std::string note;
};

HausdorffCheck theorem6_check(const CompactFamily& f, Int h, Int max_q);

struct MeasureCheck {
  /// θ_{h,q} = μ(hA_q) for q = 1..Q.
  std::vector<Rational> theta_trace;
  Rational theta;
  /// μ(hA_q) as a function of q, valid for q >= theta_from.
  std::optional<RationalFunction> theta_symbolic;
  Int theta_from = 1;
  bool trace_nonincreasing = false;
  bool verified = false;
};

MeasureCheck theorem8_check(const CompactFamily& f, Int h, Int max_q);

}  // namespace hfold

#endif  // HFOLD_RSET_HPP
