#pragma once

#include <array>
#include <optional>
#include <string>

#include "tamagawa/arith.hpp"

namespace tamagawa {

class SingularCurveError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// The standard quantities attached to a Weierstrass equation
///   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
template <class T>
struct Invariants {
  T b2, b4, b6, b8, c4, c6, discriminant;
};

template <class T>
Invariants<T> compute_invariants(const std::array<T, 5>& a) {
  const auto& [a1, a2, a3, a4, a6] = a;
  Invariants<T> inv;
  inv.b2 = a1 * a1 + 4 * a2;
  inv.b4 = 2 * a4 + a1 * a3;
  inv.b6 = a3 * a3 + 4 * a6;
  inv.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
  inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
  inv.discriminant = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 - 27 * inv.b6 * inv.b6 +
                     9 * inv.b2 * inv.b4 * inv.b6;
  return inv;
}

/// Change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Transformation {
  Rational u{1}, r{0}, s{0}, t{0};

  static Transformation identity() { return {}; }
  static Transformation scaling(const Rational& u);

  bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }
  friend bool operator==(const Transformation&, const Transformation&) = default;
};

/// The transformation equal to applying `first` and then `second`.
Transformation compose(const Transformation& first, const Transformation& second);
Transformation inverse(const Transformation& t);

class WeierstrassCurve;

/// A Weierstrass equation with rational coefficients.  Intermediate
/// stages of normalizations live here; public entry points hand out
/// WeierstrassCurve.
class RationalModel {
 public:
  RationalModel(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6);
  explicit RationalModel(const std::array<Rational, 5>& a);

  const std::array<Rational, 5>& coefficients() const { return a_; }
  const Invariants<Rational>& invariants() const { return inv_; }
  const Rational& discriminant() const { return inv_.discriminant; }
  Rational j_invariant() const;

  bool is_integral() const;
  /// The same equation as a WeierstrassCurve when all a_i are integers.
  std::optional<WeierstrassCurve> to_integral() const;

  friend bool operator==(const RationalModel& x, const RationalModel& y) { return x.a_ == y.a_; }

 private:
  std::array<Rational, 5> a_;
  Invariants<Rational> inv_;
};

/// Integral Weierstrass equation with nonzero discriminant.
class WeierstrassCurve {
 public:
  /// Throws SingularCurveError when the discriminant vanishes.
  WeierstrassCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);
  explicit WeierstrassCurve(const std::array<Integer, 5>& a);

  const Integer& a1() const { return a_[0]; }
  const Integer& a2() const { return a_[1]; }
  const Integer& a3() const { return a_[2]; }
  const Integer& a4() const { return a_[3]; }
  const Integer& a6() const { return a_[4]; }
  const std::array<Integer, 5>& coefficients() const { return a_; }

  const Invariants<Integer>& invariants() const { return inv_; }
  const Integer& c4() const { return inv_.c4; }
  const Integer& c6() const { return inv_.c6; }
  const Integer& discriminant() const { return inv_.discriminant; }
  Rational j_invariant() const;

  RationalModel as_rational() const;
  std::string to_string() const;  // "[a1,a2,a3,a4,a6]"

  friend bool operator==(const WeierstrassCurve& x, const WeierstrassCurve& y) { return x.a_ == y.a_; }

 private:
  std::array<Integer, 5> a_;
  Invariants<Integer> inv_;
};

RationalModel apply_transformation(const RationalModel& e, const Transformation& t);
RationalModel apply_transformation(const WeierstrassCurve& e, const Transformation& t);

struct MinimalModel {
  WeierstrassCurve curve;
  Transformation transformation;  // maps the input onto `curve`
};

/// Global minimal model in reduced form (a1, a3 in {0,1}, a2 in {-1,0,1}),
/// found prime by prime from (c4, c6) with Kraus' conditions at 2 and 3.
MinimalModel minimal_model(const WeierstrassCurve& e);

/// Minimal (c4, c6): a complete isomorphism invariant over Q.
struct CurveKey {
  Integer c4, c6;
  friend bool operator==(const CurveKey&, const CurveKey&) = default;
  friend bool operator<(const CurveKey& x, const CurveKey& y) {
    if (x.c4 != y.c4) return x.c4 < y.c4;
    return x.c6 < y.c6;
  }
};

CurveKey isomorphism_key(const WeierstrassCurve& e);

/// Whether integral (c4, c6) come from an integral Weierstrass model
/// (Kraus).  Requires c4^3 - c6^2 = 1728 * Delta with Delta a nonzero integer.
bool kraus_conditions_hold(const Integer& c4, const Integer& c6);

/// The reduced integral model with the given invariants.  Throws
/// ArgumentError when kraus_conditions_hold() is false.
WeierstrassCurve curve_from_c4c6(const Integer& c4, const Integer& c6);

}  // namespace tamagawa
