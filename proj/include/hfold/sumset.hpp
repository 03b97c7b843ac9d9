#ifndef HFOLD_SUMSET_HPP
#define HFOLD_SUMSET_HPP

#include <vector>

#include "hfold/epset.hpp"

namespace hfold {

/// Set when a sumset was taken with an empty operand; the result is then
/// the empty set.
struct SumFlags {
  bool empty_operand = false;
};

/// Exact Minkowski sum {s + t}. Opposite rays contribute whole residue
/// classes; the remaining finite corrections are computed exactly on the
/// certified window [lo_S + lo_T - 2P, hi_S + hi_T + 2P], P = lcm of the
/// periods.
EpSet minkowski_sum(const EpSet& s, const EpSet& t, SumFlags* flags = nullptr);

/// h-fold sumset hS, h >= 1.
EpSet h_fold(const EpSet& s, Int h, SumFlags* flags = nullptr);

/// r_{S,h}(x): a nonnegative count or Infinite.
class RepCount {
 public:
  static RepCount finite(BigInt v) { return RepCount(false, std::move(v)); }
  static RepCount infinite() { return RepCount(true, 0); }

  bool is_infinite() const { return infinite_; }
  /// Only meaningful when finite.
  const BigInt& value() const { return value_; }
  std::string str() const { return infinite_ ? "infinite" : value_.str(); }

  bool operator==(const RepCount&) const = default;

 private:
  RepCount(bool inf, BigInt v) : infinite_(inf), value_(std::move(v)) {}
  bool infinite_;
  BigInt value_;
};

RepCount count_representations(const EpSet& s, Int h, Int x);

/// Ordered h-tuples of elements of S summing to x.
struct RepTupleSet {
  Int x = 0;
  Int h = 1;
  std::vector<std::vector<Int>> tuples;
  /// True when more tuples exist than were listed.
  bool truncated = false;
};

RepTupleSet enumerate_representations(const EpSet& s, Int h, Int x, std::size_t cap);

/// Testing oracle: sorted {s + t : s, t in [-B, B]} intersected with
/// [-w, w], where B = w + window extent + 2 lcm(periods) is large enough
/// for the result to be exact on [-w, w].
std::vector<Int> brute_sumset_window(const EpSet& s, const EpSet& t, Int w);

/// Whether r_{S,h}(x) is infinite: some left-ray and right-ray element can
/// absorb x minus an (h-2)-fold sum.
bool has_infinite_representations(const EpSet& s, Int h, Int x);

}  // namespace hfold

#endif  // HFOLD_SUMSET_HPP
