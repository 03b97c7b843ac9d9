#ifndef HFOLD_BASIS_HPP
#define HFOLD_BASIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hfold/epset.hpp"

namespace hfold {

/// Ambient semigroups a set can be a basis for.
enum class Universe { Z, N, N0 };

EpSet universe_set(Universe u);
std::string to_string(Universe u);
/// Parses "Z", "N", "N0"; throws std::invalid_argument otherwise.
Universe parse_universe(const std::string& text);

struct BasisReport {
  Universe target = Universe::Z;
  /// Least h <= h_max with hA = target.
  std::optional<Int> order;
  Int h_max = 1;
  /// Per-h equality hA == target for h = 1..h_max. Not assumed monotone:
  /// N is a basis of order 1 for N but of no order h >= 2.
  std::vector<bool> per_h;
  /// Element of target missing from h_max A when no order was found.
  std::optional<Int> missing;
  std::string certificate;
  /// Reading of the identity clause used for the "h >= h0" extension.
  std::string identity_note;
};

BasisReport basis_order(const EpSet& a, Universe target, Int h_max);

/// True iff hA equals the target.
bool is_basis_of_order(const EpSet& a, Int h, Universe target);

struct NonbasisResult {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  /// Criterion name when kind == Yes.
  std::string reason;
  /// Basis order when kind == No; searched bound when Unknown.
  Int order = 0;
};

/// Sound "never a basis" criteria, with a bounded search for an order as
/// fallback.
NonbasisResult is_nonbasis_forever(const EpSet& a, Universe target, Int h_max = 8);

/// gcd of all differences a - a' for a, a' in A (0 for sets with fewer than
/// two elements).
Int difference_gcd(const EpSet& a);

struct MultiplesMaximality {
  Int h = 2;
  bool maximal = false;
  /// Least residue b (mod h, b != 0) for which h(hZ ∪ {b}) != Z.
  std::optional<Int> witness;
};

/// Decides whether h*Z is a maximal nonbasis of order h for Z using only
/// the additive criterion {k b mod h : 0 <= k <= h} = Z_h for b != 0.
MultiplesMaximality multiples_maximal_nonbasis(Int h);

struct MaximalityReport {
  enum class Kind { IsBasis, NotMaximal, MaximalOverProbe };
  Kind kind = Kind::NotMaximal;
  std::optional<Int> witness;
  std::size_t probed = 0;
};

/// Candidate elements b not in A that maximality_probe tests: the window
/// plus one period beyond it on each side, ordered by |b| (positive first).
std::vector<Int> maximality_candidates(const EpSet& a);

/// Tests whether every single-element extension A ∪ {b} over the candidate
/// set is a basis of order h for the target.
MaximalityReport maximality_probe(const EpSet& a, Int h, Universe target);

std::string to_string(NonbasisResult::Kind k);
std::string to_string(MaximalityReport::Kind k);

}  // namespace hfold

#endif  // HFOLD_BASIS_HPP
