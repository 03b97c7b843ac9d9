#ifndef HFOLD_EPSET_HPP
#define HFOLD_EPSET_HPP

#include <optional>
#include <string>
#include <vector>

#include "hfold/integer.hpp"

namespace hfold {

/// Unvalidated field bundle for an eventually periodic set. Membership:
///   x < lo        : x mod period in left
///   lo <= x <= hi : x in core
///   x > hi        : x mod period in right
/// An empty window is encoded by lo == hi + 1.
struct RawEpSet {
  Int period = 1;
  Int lo = 0;
  Int hi = -1;
  std::vector<Int> core;
  std::vector<Int> left;
  std::vector<Int> right;
};

/// Result of minimum()/maximum().
struct Extremum {
  enum class Kind { Finite, Infinite, Empty };
  Kind kind = Kind::Empty;
  Int value = 0;

  bool finite() const { return kind == Kind::Finite; }
  bool operator==(const Extremum&) const = default;
};

/// Eventually periodic subset of Z in canonical form.
///
/// Every instance is normalized on construction: the period is the least
/// common period of both rays and the window [lo, hi] is the smallest one
/// outside of which membership follows the ray patterns. Two EpSets denote
/// the same set iff their fields are identical, so operator== is set
/// equality.
class EpSet {
 public:
  /// The empty set.
  EpSet();

  static EpSet empty() { return EpSet(); }
  static EpSet all_integers();
  static EpSet positive_integers();     // N
  static EpSet nonnegative_integers();  // N0
  static EpSet from_finite(std::vector<Int> elements);
  static EpSet ray_geq(Int t);
  static EpSet ray_leq(Int t);
  /// {r : |r| >= q}, q >= 1.
  static EpSet abs_geq(Int q);
  /// {a + d k : k >= 0}, d >= 1.
  static EpSet ap(Int a, Int d);
  /// d*Z = {d l : l in Z}, d >= 1.
  static EpSet dilate(Int d);
  /// Union of the residue classes r mod p over all of Z.
  static EpSet residue_classes(Int p, const std::vector<Int>& residues);

  bool contains(Int x) const;

  Int period() const { return period_; }
  Int window_lo() const { return lo_; }
  Int window_hi() const { return hi_; }
  const std::vector<Int>& core() const { return core_; }
  std::vector<Int> left_residues() const;
  std::vector<Int> right_residues() const;
  bool left_has(Int residue) const { return left_[residue]; }
  bool right_has(Int residue) const { return right_[residue]; }
  bool has_left_ray() const;
  bool has_right_ray() const;

  bool is_empty() const;
  bool is_finite() const { return !has_left_ray() && !has_right_ray(); }
  bool is_all() const;

  RawEpSet raw() const;

  bool operator==(const EpSet&) const = default;

 private:
  friend EpSet normalize(const RawEpSet&);

  Int period_ = 1;
  Int lo_ = 0;
  Int hi_ = -1;
  std::vector<Int> core_;
  std::vector<bool> left_;
  std::vector<bool> right_;
};

/// Validates and canonicalizes. Throws std::invalid_argument on
/// structurally invalid input (period < 1, lo > hi + 1, core outside the
/// window, residue outside [0, period)).
EpSet normalize(const RawEpSet& raw);

EpSet set_union(const EpSet& s, const EpSet& t);
EpSet set_intersect(const EpSet& s, const EpSet& t);
EpSet set_complement(const EpSet& s);
EpSet set_difference(const EpSet& s, const EpSet& t);
EpSet translate(const EpSet& s, Int shift);

bool equals(const EpSet& s, const EpSet& t);
bool is_subset(const EpSet& s, const EpSet& t);

Extremum minimum(const EpSet& s);
Extremum maximum(const EpSet& s);

/// Element of smallest absolute value (negative wins ties); nullopt when
/// empty.
std::optional<Int> element_nearest_zero(const EpSet& s);

/// Largest |endpoint| of the window, used to size brute-force ranges.
Int window_extent(const EpSet& s);

/// Membership of every x in [from, to] as a byte vector.
std::vector<char> membership(const EpSet& s, Int from, Int to);

/// Short human-readable dump of the canonical fields.
std::string describe(const EpSet& s);

}  // namespace hfold

#endif  // HFOLD_EPSET_HPP
