#ifndef HFOLD_FAMILY_HPP
#define HFOLD_FAMILY_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfold/basis.hpp"
#include "hfold/epset.hpp"

namespace hfold {

/// Structural knowledge about a family that certificates may rely on for
/// every q, not only the probed ones.
enum class FamilyShape {
  Generic,
  Constant,    // A_q = A
  SharpUnion,  // A_q = A ∪ {r : |r| >= q}
  FlatUnion,   // A_q = A ∪ {r in N : r >= q}
};

enum class Monotonicity { Decreasing, Unknown };

std::string to_string(FamilyShape s);

/// q -> A_q for q >= 1, with an optional declared limit A = ∩ A_q.
struct SetFamily {
  std::string name;
  std::function<EpSet(Int)> rule;
  std::optional<EpSet> declared_limit;
  Monotonicity claim = Monotonicity::Unknown;
  FamilyShape shape = FamilyShape::Generic;
  /// The set A for the structured shapes.
  std::optional<EpSet> base;
  Universe universe = Universe::Z;

  EpSet at(Int q) const;
};

/// A discrepancy between a family and its declared metadata.
class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SetFamily builtin_sharp_family(const EpSet& a);
SetFamily builtin_flat_family(const EpSet& a);
SetFamily constant_family(const EpSet& a);
SetFamily generic_family(std::string name, std::function<EpSet(Int)> rule,
                         std::optional<EpSet> limit = std::nullopt,
                         Monotonicity claim = Monotonicity::Unknown);

struct DecreasingReport {
  bool decreasing = true;
  bool strictly = true;
  /// "Not eventually constant": exact for structured shapes, otherwise a
  /// strict step in the upper half of 1..Q.
  bool asymptotically_strictly = false;
  bool asymptotic_is_symbolic = false;
  /// q in [1, Q) with A_q != A_{q+1}.
  std::vector<Int> strict_steps;
  /// First q with A_{q+1} not contained in A_q.
  std::optional<Int> first_violation;
};

DecreasingReport check_decreasing(const SetFamily& f, Int max_q);

struct TruncatedIntersection {
  EpSet set;
  /// Least q* with the running intersection unchanged on [q*, Q].
  std::optional<Int> stabilized_at;
};

TruncatedIntersection truncated_intersection(const SetFamily& f, Int max_q);
TruncatedIntersection truncated_sumset_intersection(const SetFamily& f, Int h, Int max_q);

/// Checks the declared limit against probes: A ⊆ A_q for q <= Q and
/// ∩_{q<=Q} A_q agrees with A on [-window, window]. Throws FamilyError.
void validate_family(const SetFamily& f, Int max_q, std::optional<Int> window = std::nullopt);

enum class VerdictStatus { EqualityCertified, ProperInclusionCertified, Undetermined };

std::string to_string(VerdictStatus s);

/// Outcome of testing hA = ∩_q hA_q at truncation Q.
struct Verdict {
  Int h = 1;
  VerdictStatus status = VerdictStatus::Undetermined;
  Int truncation = 1;
  /// Name of the certificate that fired ("basis", "squeeze", ...).
  std::string certificate;
  std::string evidence;
  /// x in hA_q for every q but not in hA (proper inclusion only).
  std::optional<Int> witness;
  /// Tail thresholds max(1, q + (h-1)a*) for q = 1..Q (squeeze only).
  std::vector<Int> tail_thresholds;

  std::string label() const;
};

Verdict equality_verdict(const SetFamily& f, Int h, Int max_q);

struct Classification {
  std::vector<Verdict> verdicts;  // h = 1..h_max
  /// No certified pair with equality at h but not at h+1 (resp. h-1).
  bool upward_transfer_holds = true;
  bool downward_transfer_holds = true;
  std::vector<std::string> transfer_notes;
};

Classification classify_h_set(const SetFamily& f, Int h_max, Int max_q);

enum class ChainPrecondition { Empty, NotBoundedBelow, MinimumNotNegative, Finite, ContainsAllLargeIntegers };

class ChainPreconditionError : public std::invalid_argument {
 public:
  ChainPreconditionError(ChainPrecondition which, const std::string& what)
      : std::invalid_argument(what), which_(which) {}
  ChainPrecondition which() const { return which_; }

 private:
  ChainPrecondition which_;
};

/// Throws ChainPreconditionError unless A is infinite, bounded below
/// with min(A) < 0, and misses infinitely many positive integers.
void check_chain_preconditions(const EpSet& a);

struct ChainCheck {
  Int min_element = 0;
  /// q + (h-1) min(A) + offset, before clamping to N.
  Int raw_threshold = 0;
  Int threshold = 0;
  bool clamped = false;
  bool lower_holds = false;  // hA ⊆ hA_q
  bool upper_holds = false;  // hA_q ⊆ hA ∪ {r in N : r >= threshold}

  bool holds() const { return lower_holds && upper_holds; }
};

/// Verifies hA ⊆ hA_q ⊆ hA ∪ {r in N : r >= q + (h-1)a*} exactly for the
/// flat family member A_q = A ∪ {r in N : r >= q}. A nonzero offset moves
/// the threshold (used as a mutation control).
ChainCheck theorem5_chain_check(const EpSet& a, Int h, Int q, Int threshold_offset = 0);

}  // namespace hfold

#endif  // HFOLD_FAMILY_HPP
