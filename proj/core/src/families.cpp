#include "tamagawa/families.hpp"

namespace tamagawa {

namespace {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer pow(const Integer& x, unsigned long k) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), k);
  return out;
}

void expect_discriminant(const WeierstrassCurve& e, const Integer& expected) {
  if (e.discriminant() != expected) {
    throw InternalError("discriminant of " + e.to_string() + " is " + to_string(e.discriminant()) + ", expected " +
                        to_string(expected));
  }
}

long ord3(int n) {
  long k = 0;
  for (; n % 3 == 0; n /= 3) ++k;
  return k;
}

}  // namespace

WeierstrassCurve four_torsion_curve(const Integer& s, const Integer& t) {
  if (s <= 0) throw ArgumentError("four_torsion_curve needs s > 0");
  if (gcd(s, t) != 1) throw ArgumentError("four_torsion_curve needs gcd(s, t) = 1");
  Integer disc = pow(s, 4) * pow(t, 7) * (16 * s + t);
  if (disc == 0) {
    throw SingularCurveError(t == 0 ? "four_torsion_curve: t = 0" : "four_torsion_curve: 16s + t = 0");
  }
  WeierstrassCurve e(t, -s * t, -s * t * t, 0, 0);
  expect_discriminant(e, disc);
  return e;
}

RationalModel e_lambda(const Rational& lambda) { return RationalModel(1, -lambda, -lambda, 0, 0); }

WeierstrassCurve two_six_curve(const Rational& t) {
  const Integer a = t.get_num();
  const Integer b = t.get_den();
  const std::pair<Integer, const char*> factors[] = {
      {a, "t"}, {a - b, "t - 1"}, {a + b, "t + 1"}, {3 * a - b, "3t - 1"}, {3 * a + b, "3t + 1"}};
  for (const auto& [value, name] : factors) {
    if (value == 0) throw SingularCurveError("two_six_curve: factor " + std::string(name) + " vanishes at t = " + to_string(t));
  }
  Integer common = a * (a - b) * (a + b) * (a + b);
  WeierstrassCurve e(-a * a + 4 * a * b + b * b, -common, -common * (3 * a + b) * b, 0, 0);
  expect_discriminant(e, pow(a * (a - b) * (a + b), 6) * pow((3 * a - b) * (3 * a + b), 2) * b * b);
  return e;
}

WeierstrassCurve two_torsion_ss_curve(const Integer& a, const Integer& b) {
  if (gcd(a, b) != 1) throw ArgumentError("two_torsion_ss_curve needs gcd(a, b) = 1");
  Integer disc = 16 * b * b * (a * a - 4 * b);
  if (disc == 0) throw SingularCurveError(b == 0 ? "two_torsion_ss_curve: b = 0" : "two_torsion_ss_curve: a^2 = 4b");
  WeierstrassCurve e(0, a, 0, b, 0);
  expect_discriminant(e, disc);
  return e;
}

ThreeTorsionNormalForm ThreeTorsionNormalForm::make(const Integer& a, const Integer& b, const FactorBudget& budget) {
  if (b <= 0) throw ArgumentError("three-torsion normal form needs b > 0");
  if (a * a * a == 27 * b) throw SingularCurveError("three-torsion normal form: a^3 = 27b");
  Integer g = gcd(a, b);
  if (g > 1) {
    for (const auto& q : factor(g, budget).primes()) {
      if (ord(b, q) >= 3) {
        throw ArgumentError("(" + to_string(a) + ", " + to_string(b) + ") is not normalized at " + to_string(q));
      }
    }
  }
  return {a, b};
}

ThreeTorsionNormalForm three_torsion_normalize(const Rational& c, const Rational& d, const FactorBudget& budget) {
  if (d == 0) throw SingularCurveError("three_torsion_normalize: d = 0");
  if (c * c * c == 27 * d) throw SingularCurveError("three_torsion_normalize: c^3 = 27d");
  // Clear denominators with x -> x/m^2, y -> y/m^3: (c, d) -> (m c, m^3 d).
  Integer m = 1;
  Integer den = c.get_den() * d.get_den();
  if (den > 1) {
    for (const auto& q : factor(den, budget).primes()) {
      long need = 0;
      if (c.get_den() != 1 && mpz_divisible_p(c.get_den().get_mpz_t(), q.get_mpz_t())) need = ord(c.get_den(), q);
      if (mpz_divisible_p(d.get_den().get_mpz_t(), q.get_mpz_t())) need = std::max(need, (ord(d.get_den(), q) + 2) / 3);
      m *= pow(q, static_cast<unsigned long>(need));
    }
  }
  Rational cm = c * m;
  Rational dm = d * m * m * m;
  cm.canonicalize();
  dm.canonicalize();
  Integer a = cm.get_num();
  Integer b = dm.get_num();
  if (b < 0) {
    a = -a;
    b = -b;
  }
  // Divide by q^n with n = min(ord_q(a), floor(ord_q(b) / 3)).
  for (const auto& q : factor(b, budget).primes()) {
    long n = ord(b, q) / 3;
    if (a != 0) n = std::min(n, ord(a, q));
    if (n > 0) {
      Integer qn = pow(q, static_cast<unsigned long>(n));
      a /= qn;
      b /= pow(qn, 3);
    }
  }
  return ThreeTorsionNormalForm::make(a, b, budget);
}

long IsogenyPair::ord3_ratio_total() const {
  long total = 0;
  for (const auto& entry : ledger) total += entry.ord3_ratio;
  return total;
}

IsogenyPair hadano_quotient(const ThreeTorsionNormalForm& src, const FactorBudget& budget) {
  if (src.b != 1) throw UnsupportedDomain("the 3-isogeny quotient is only available for b = 1");
  const Integer& a = src.a;
  WeierstrassCurve quotient(a + 6, 0, a * a + 3 * a + 9, 0, 0);
  Integer d = a * a * a - 27;
  expect_discriminant(quotient, d * d * d);
  if (quotient.c4() != a * (a * a * a + 216)) throw InternalError("quotient c4 identity fails at a = " + to_string(a));

  IsogenyPair pair{src, quotient, {}};
  const WeierstrassCurve e = src.curve();
  for (const auto& p : factor(e.discriminant(), budget).primes()) {
    LedgerEntry entry;
    entry.prime = p;
    entry.source = tate(e, p);
    entry.quotient = tate(quotient, p);
    if (entry.source.reduction == ReductionClass::Good) {
      if (entry.quotient.reduction != ReductionClass::Good) throw InternalError("isogenous curves disagree on bad primes");
      continue;
    }
    entry.ord3_ratio = ord3(entry.quotient.tamagawa) - ord3(entry.source.tamagawa);
    pair.ledger.push_back(std::move(entry));
  }
  return pair;
}

std::optional<Integer> quotient_split_prime(const IsogenyPair& pair) {
  const Integer& a = pair.source.a;
  Integer n = abs(a * a + 3 * a + 9);
  mpz_remove(n.get_mpz_t(), n.get_mpz_t(), Integer(3).get_mpz_t());
  if (n == 1) return std::nullopt;
  return factor(n).factors.front().prime;
}

}  // namespace tamagawa
