#ifndef HFOLD_LATTICE_HPP
#define HFOLD_LATTICE_HPP

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hfold/integer.hpp"

namespace hfold {

using LatticePoint = std::vector<Int>;

/// max_i |x_i|
Int norm_inf(const LatticePoint& x);

/// Membership rule for points with norm above the window radius.
struct Outside {
  enum class Kind { Empty, All, NormRay };
  Kind kind = Kind::Empty;
  Int q = 0;  // NormRay only

  bool operator==(const Outside&) const = default;
};

std::string to_string(Outside::Kind k);

/// Subset of Z^d: exact bitmap over [-W, W]^d plus an outside rule.
class WindowedLatticeSet {
 public:
  static WindowedLatticeSet finite(Int d, Int w, const std::vector<LatticePoint>& points);
  /// {x : |x|_inf >= q}; requires 1 <= q <= W.
  static WindowedLatticeSet norm_ray(Int d, Int q, Int w);
  static WindowedLatticeSet all(Int d, Int w);
  static WindowedLatticeSet from_points(Int d, Int w, const std::vector<LatticePoint>& points, Outside outside);

  Int dimension() const { return d_; }
  Int radius() const { return w_; }
  const Outside& outside() const { return outside_; }
  bool contains(const LatticePoint& x) const;
  /// Members inside the window in lexicographic order.
  std::vector<LatticePoint> points() const;
  std::size_t inside_count() const { return bits_.count(); }
  bool is_finite() const { return outside_.kind == Outside::Kind::Empty; }
  bool is_empty() const { return is_finite() && bits_.none(); }
  /// Least r with every point of norm >= r a member (finite sets: nullopt).
  std::optional<Int> ray_radius() const;

  WindowedLatticeSet with_union(const WindowedLatticeSet& other) const;

 private:
  WindowedLatticeSet(Int d, Int w, Outside outside);
  std::size_t index(const LatticePoint& x) const;
  LatticePoint point_at(std::size_t idx) const;

  Int d_;
  Int w_;
  boost::dynamic_bitset<> bits_;
  Outside outside_;
};

/// Same membership on all of Z^d.
bool equals(const WindowedLatticeSet& s, const WindowedLatticeSet& t);

/// The decomposition x = y + (h-1)z with |y|, |z| >= q; returns (y, z, ..., z).
std::vector<LatticePoint> witness_decompose(const LatticePoint& x, Int h, Int q);

/// Exact S + T, represented with window radius safe_w. Finite + finite must
/// fit the window; sets containing a norm ray are handled symbolically.
/// Throws std::invalid_argument on an unsupported or unrepresentable case.
WindowedLatticeSet windowed_sumset(const WindowedLatticeSet& s, const WindowedLatticeSet& t, Int safe_w);
WindowedLatticeSet windowed_hfold(const WindowedLatticeSet& s, Int h, Int safe_w);

/// r_{N0^d,h}(n) = prod_i C(n_i + h - 1, h - 1).
BigInt count_reps_n0d(const LatticePoint& n, Int h);

/// Finite subsets of [0, W]^d with sumsets truncated to the box. Exact on
/// the box because every coordinate of a summand is nonnegative.
class BoxSet {
 public:
  BoxSet(Int d, Int w);
  static BoxSet from_points(Int d, Int w, const std::vector<LatticePoint>& points);

  Int dimension() const { return d_; }
  Int box() const { return w_; }
  bool contains(const LatticePoint& x) const;
  void insert(const LatticePoint& x);
  std::vector<LatticePoint> points() const;
  std::size_t size() const { return bits_.count(); }
  bool subset_of(const BoxSet& other) const;
  BoxSet intersect(const BoxSet& other) const;
  /// (S + T) ∩ [0, W]^d
  BoxSet sum(const BoxSet& other) const;
  BoxSet hfold(Int h) const;

  bool operator==(const BoxSet& other) const;

 private:
  std::size_t index(const LatticePoint& x) const;

  Int d_;
  Int w_;
  Int base_;  // 2W + 1, so coordinate sums never carry
  boost::dynamic_bitset<> bits_;
};

struct StableBoxResult {
  bool holds = false;
  /// Outputs x in the stable sub-box, where A_Q and the limit agree on
  /// every point y <= x.
  std::size_t stable_points = 0;
  std::size_t box_points = 0;
  std::optional<LatticePoint> mismatch;
};

/// Compares h(limit) with ∩_{q<=Q} h rule(q) on the box [0, W]^d, limited to
/// the stable sub-box. Without a declared limit the truncated intersection
/// is used. Throws std::invalid_argument if the rule is not decreasing or
/// leaves the box, or the limit is not contained in every member.
StableBoxResult theorem2_check(const std::function<BoxSet(Int)>& rule, Int h, Int max_q,
                              const std::optional<BoxSet>& limit = std::nullopt);

/// A_q = limit ∪ {p : q <= level(p)}: decreasing, with the given limit.
struct FadingFiltration {
  BoxSet limit;
  std::vector<std::pair<LatticePoint, Int>> fading;
  BoxSet at(Int q) const;
};

/// Random limit points and fading points with levels in [1, max_q + 5].
FadingFiltration random_fading_filtration(Int d, Int w, Int max_q, std::size_t limit_points,
                                          std::size_t fading_points, std::mt19937_64& rng);

}  // namespace hfold

#endif  // HFOLD_LATTICE_HPP
