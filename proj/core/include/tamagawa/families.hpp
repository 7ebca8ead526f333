#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamagawa/local.hpp"

namespace tamagawa {

/// y^2 + t xy - s t^2 y = x^3 - s t x^2, the integral model of E_{s/t}.
/// Requires s > 0 and gcd(s, t) = 1; Delta = s^4 t^7 (16 s + t).
WeierstrassCurve four_torsion_curve(const Integer& s, const Integer& t);

/// E_lambda: y^2 + xy - lambda y = x^3 - lambda x^2; (0,0) has order 4.
RationalModel e_lambda(const Rational& lambda);

/// Curve with Z/2 x Z/6 torsion at parameter t = a/b (lowest terms,
/// b > 0), scaled by u = 1/b^2 so that it is integral:
///   a1 = -a^2 + 4ab + b^2
///   a2 = -a (a-b) (a+b)^2
///   a3 = -a (a-b) (a+b)^2 (3a+b) b
/// For b = 1 this is the t-model, for a = 1 the mu-model with mu = b.
/// Throws SingularCurveError naming the vanishing factor of
/// Delta(t) = t^6 (t-1)^6 (t+1)^6 (3t-1)^2 (3t+1)^2.
WeierstrassCurve two_six_curve(const Rational& t);

/// y^2 = x^3 + a x^2 + b x with gcd(a, b) = 1; Delta = 16 b^2 (a^2 - 4b).
WeierstrassCurve two_torsion_ss_curve(const Integer& a, const Integer& b);

/// y^2 + a xy + b y = x^3 with b > 0 and, for every prime q, q does not
/// divide a or q^3 does not divide b.  (0,0) has order 3.
struct ThreeTorsionNormalForm {
  Integer a, b;

  /// Validates the normalization and nonsingularity.
  static ThreeTorsionNormalForm make(const Integer& a, const Integer& b, const FactorBudget& budget = {});

  Integer D() const { return a * a * a - 27 * b; }
  WeierstrassCurve curve() const { return WeierstrassCurve(a, 0, b, 0, 0); }
  friend bool operator==(const ThreeTorsionNormalForm&, const ThreeTorsionNormalForm&) = default;
};

/// Normal form of y^2 + c xy + d y = x^3 for rational c, d.
ThreeTorsionNormalForm three_torsion_normalize(const Rational& c, const Rational& d, const FactorBudget& budget = {});

struct LedgerEntry {
  Integer prime;
  LocalDatum source;
  LocalDatum quotient;
  long ord3_ratio = 0;  // ord_3 c_p(quotient) - ord_3 c_p(source)
};

struct IsogenyPair {
  ThreeTorsionNormalForm source;
  WeierstrassCurve quotient;
  std::vector<LedgerEntry> ledger;  // bad primes, increasing

  long ord3_ratio_total() const;
};

/// y^2 + (a+6) xy + (a^2+3a+9) y = x^3, the quotient of the b = 1 normal
/// form by <(0,0)>.  Checks Delta' = (a^3-27)^3 and c4' = a(a^3+216).
/// Throws UnsupportedDomain for b != 1.
IsogenyPair hadano_quotient(const ThreeTorsionNormalForm& src, const FactorBudget& budget = {});

/// Smallest prime q != 3 dividing a^2 + 3a + 9, or nullopt when that
/// number is a power of 3 (a in {0, -3, -6}).
std::optional<Integer> quotient_split_prime(const IsogenyPair& pair);

}  // namespace tamagawa
