#include "tamagawa/curve.hpp"

#include <sstream>

namespace tamagawa {

namespace {

Integer power(const Integer& x, unsigned long k) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), k);
  return out;
}

std::array<Rational, 5> transform_coefficients(const std::array<Rational, 5>& a, const Transformation& tr) {
  if (tr.u == 0) throw ArgumentError("transformation with u = 0");
  const auto& [a1, a2, a3, a4, a6] = a;
  const Rational& r = tr.r;
  const Rational& s = tr.s;
  const Rational& t = tr.t;
  Rational u2 = tr.u * tr.u;
  Rational u3 = u2 * tr.u;
  Rational u4 = u2 * u2;
  Rational u6 = u3 * u3;
  std::array<Rational, 5> out;
  out[0] = (a1 + 2 * s) / tr.u;
  out[1] = (a2 - s * a1 + 3 * r - s * s) / u2;
  out[2] = (a3 + r * a1 + 2 * t) / u3;
  out[3] = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4;
  out[4] = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;
  for (auto& c : out) c.canonicalize();
  return out;
}

Integer exact_div(const Integer& a, const Integer& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
    throw ArgumentError("invariants do not come from an integral model");
  }
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Residue of x modulo m in (-m/2, m/2].
Integer balanced_mod(const Integer& x, long m) {
  Integer r = mod_positive(x, Integer(m));
  if (r > m / 2) r -= m;
  return r;
}

bool kraus_at_2(const Integer& c4, const Integer& c6) {
  if (mod_positive(c6, Integer(4)) == 3) return true;
  if (!mpz_divisible_ui_p(c4.get_mpz_t(), 16)) return false;
  Integer r = mod_positive(c6, Integer(32));
  return r == 0 || r == 8;
}

bool kraus_at_3(const Integer& c6) {
  if (c6 == 0) return true;
  return ord(c6, Integer(3)) != 2;
}

}  // namespace

Transformation Transformation::scaling(const Rational& u) {
  if (u == 0) throw ArgumentError("transformation with u = 0");
  Transformation t;
  t.u = u;
  return t;
}

Transformation compose(const Transformation& first, const Transformation& second) {
  if (first.u == 0 || second.u == 0) throw ArgumentError("transformation with u = 0");
  const Rational u1sq = first.u * first.u;
  Transformation out;
  out.u = first.u * second.u;
  out.r = first.r + u1sq * second.r;
  out.s = first.s + first.u * second.s;
  out.t = first.t + u1sq * first.s * second.r + u1sq * first.u * second.t;
  return out;
}

Transformation inverse(const Transformation& t) {
  if (t.u == 0) throw ArgumentError("transformation with u = 0");
  Transformation out;
  out.u = 1 / t.u;
  out.r = -t.r / (t.u * t.u);
  out.s = -t.s / t.u;
  out.t = (t.r * t.s - t.t) / (t.u * t.u * t.u);
  out.u.canonicalize();
  out.r.canonicalize();
  out.s.canonicalize();
  out.t.canonicalize();
  return out;
}

RationalModel::RationalModel(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
    : RationalModel(std::array<Rational, 5>{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)}) {}

RationalModel::RationalModel(const std::array<Rational, 5>& a) : a_(a), inv_(compute_invariants(a_)) {
  for (auto& c : a_) c.canonicalize();
  if (inv_.discriminant == 0) throw SingularCurveError("singular Weierstrass equation (discriminant 0)");
}

Rational RationalModel::j_invariant() const {
  Rational j = inv_.c4 * inv_.c4 * inv_.c4 / inv_.discriminant;
  j.canonicalize();
  return j;
}

bool RationalModel::is_integral() const {
  for (const auto& c : a_) {
    if (c.get_den() != 1) return false;
  }
  return true;
}

std::optional<WeierstrassCurve> RationalModel::to_integral() const {
  if (!is_integral()) return std::nullopt;
  return WeierstrassCurve(a_[0].get_num(), a_[1].get_num(), a_[2].get_num(), a_[3].get_num(), a_[4].get_num());
}

WeierstrassCurve::WeierstrassCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : WeierstrassCurve(std::array<Integer, 5>{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)}) {}

WeierstrassCurve::WeierstrassCurve(const std::array<Integer, 5>& a) : a_(a), inv_(compute_invariants(a_)) {
  if (inv_.discriminant == 0) throw SingularCurveError("singular Weierstrass equation " + to_string());
}

Rational WeierstrassCurve::j_invariant() const { return make_rational(inv_.c4 * inv_.c4 * inv_.c4, inv_.discriminant); }

RationalModel WeierstrassCurve::as_rational() const {
  return RationalModel(Rational(a_[0]), Rational(a_[1]), Rational(a_[2]), Rational(a_[3]), Rational(a_[4]));
}

std::string WeierstrassCurve::to_string() const {
  std::ostringstream os;
  os << '[' << a_[0] << ',' << a_[1] << ',' << a_[2] << ',' << a_[3] << ',' << a_[4] << ']';
  return os.str();
}

RationalModel apply_transformation(const RationalModel& e, const Transformation& t) {
  return RationalModel(transform_coefficients(e.coefficients(), t));
}

RationalModel apply_transformation(const WeierstrassCurve& e, const Transformation& t) {
  return apply_transformation(e.as_rational(), t);
}

bool kraus_conditions_hold(const Integer& c4, const Integer& c6) {
  Integer disc1728 = c4 * c4 * c4 - c6 * c6;
  if (disc1728 == 0 || !mpz_divisible_ui_p(disc1728.get_mpz_t(), 1728)) return false;
  return kraus_at_3(c6) && kraus_at_2(c4, c6);
}

WeierstrassCurve curve_from_c4c6(const Integer& c4, const Integer& c6) {
  if (!kraus_conditions_hold(c4, c6)) {
    throw ArgumentError("(c4, c6) = (" + tamagawa::to_string(c4) + ", " + tamagawa::to_string(c6) +
                        ") are not invariants of an integral model");
  }
  Integer b2 = balanced_mod(-c6, 12);
  Integer b4 = exact_div(b2 * b2 - c4, 24);
  Integer b6 = exact_div(-b2 * b2 * b2 + 36 * b2 * b4 - c6, 216);
  Integer a1 = mod_positive(b2, 2);
  Integer a3 = mod_positive(b6, 2);
  Integer a2 = exact_div(b2 - a1, 4);
  Integer a4 = exact_div(b4 - a1 * a3, 2);
  Integer a6 = exact_div(b6 - a3, 4);
  return WeierstrassCurve(a1, a2, a3, a4, a6);
}

MinimalModel minimal_model(const WeierstrassCurve& e) {
  const auto& inv = e.invariants();
  Integer g;
  mpz_gcd(g.get_mpz_t(), inv.c4.get_mpz_t(), inv.c6.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), inv.discriminant.get_mpz_t());

  Integer u = 1;
  if (g > 1) {
    for (const auto& pp : factor(g).factors) {
      const Integer& p = pp.prime;
      long d = ord(inv.discriminant, p) / 12;
      if (inv.c4 != 0) d = std::min(d, ord(inv.c4, p) / 4);
      if (inv.c6 != 0) d = std::min(d, ord(inv.c6, p) / 6);
      for (; d > 0; --d) {
        if (p > 3) break;
        Integer c4d = inv.c4 / power(p, 4 * d);
        Integer c6d = inv.c6 / power(p, 6 * d);
        if (p == 2 ? kraus_at_2(c4d, c6d) : kraus_at_3(c6d)) break;
      }
      u *= power(p, static_cast<unsigned long>(d));
    }
  }

  Integer u4 = power(u, 4);
  WeierstrassCurve reduced = curve_from_c4c6(inv.c4 / u4, inv.c6 / (u4 * u * u));

  // Solve for r, s, t given u: the first three coefficient equations are
  // triangular in s, r, t.
  Transformation tr;
  tr.u = Rational(u);
  const auto& a = e.coefficients();
  const auto& b = reduced.coefficients();
  tr.s = Rational(u * b[0] - a[0]) / 2;
  tr.r = Rational(u * u * b[1] - a[1] + tr.s * a[0] + tr.s * tr.s) / 3;
  tr.t = Rational(u * u * u * b[2] - a[2] - tr.r * a[0]) / 2;
  tr.s.canonicalize();
  tr.r.canonicalize();
  tr.t.canonicalize();
  if (apply_transformation(e, tr) != reduced.as_rational()) {
    throw InternalError("minimal model transformation mismatch for " + e.to_string());
  }
  return {reduced, tr};
}

CurveKey isomorphism_key(const WeierstrassCurve& e) {
  auto m = minimal_model(e);
  return {m.curve.c4(), m.curve.c6()};
}

}  // namespace tamagawa
