#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamagawa/curve.hpp"

namespace tamagawa {

/// Affine rational point, or the point at infinity.
struct RationalPoint {
  bool infinity = false;
  Rational x, y;

  static RationalPoint at_infinity() { return {true, 0, 0}; }
  static RationalPoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }

  friend bool operator==(const RationalPoint& p, const RationalPoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
  friend bool operator<(const RationalPoint& p, const RationalPoint& q) {
    if (p.infinity != q.infinity) return p.infinity;
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
  }
};

bool on_curve(const WeierstrassCurve& e, const RationalPoint& p);
bool on_curve(const RationalModel& e, const RationalPoint& p);

/// Chord-tangent addition.  Throws ArgumentError for points off the curve.
RationalPoint group_law_add(const WeierstrassCurve& e, const RationalPoint& p, const RationalPoint& q);
RationalPoint negate(const WeierstrassCurve& e, const RationalPoint& p);
RationalPoint multiply(const WeierstrassCurve& e, const RationalPoint& p, long n);

/// Exact order, or nullopt for a point of infinite order.  Rational
/// torsion points have order at most 12, so 12 multiples decide.
std::optional<int> point_order(const WeierstrassCurve& e, const RationalPoint& p);

/// Image under the coordinate change of `t`: a point of the model that
/// `t` maps onto is sent back to the source model.
RationalPoint pull_back(const Transformation& t, const RationalPoint& p);

/// E(Q)_tors as Z/n1 x Z/n2 with n1 | n2 (n1 = 1 for cyclic groups).
struct TorsionStructure {
  int n1 = 1;
  int n2 = 1;
  std::vector<RationalPoint> generators;  // one per nontrivial cyclic factor

  int order() const { return n1 * n2; }
  bool is_cyclic() const { return n1 == 1; }
  /// "Z/N" or "Z/2xZ/2N"; the trivial group is "Z/1".
  std::string shape() const;
};

/// Whether Z/n1 x Z/n2 is one of Mazur's fifteen groups.
bool in_mazur_list(int n1, int n2);

/// Parses a shape string as produced by TorsionStructure::shape().
std::pair<int, int> parse_torsion_shape(const std::string& shape);

/// Upper bound on |E(Q)_tors|: gcd of #E(F_p) over the two smallest
/// primes p > 3 of good reduction.
int torsion_bound(const WeierstrassCurve& e);

/// #E(F_p) for an odd prime p of good reduction.
long count_points(const WeierstrassCurve& e, unsigned long p);

/// Lutz-Nagell search on the short model of the minimal model, every
/// generator certified with the group law.
TorsionStructure torsion_subgroup(const WeierstrassCurve& e, const FactorBudget& budget = {});

}  // namespace tamagawa
