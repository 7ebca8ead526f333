#include "tamagawa/local.hpp"

#include <algorithm>

namespace tamagawa {

KodairaType KodairaType::multiplicative(int n) {
  if (n < 1) throw ArgumentError("I_n needs n >= 1");
  return KodairaType(Family::I, n);
}

KodairaType KodairaType::star(int n) {
  if (n < 0) throw ArgumentError("I_n* needs n >= 0");
  return KodairaType(Family::IStar, n);
}

KodairaType KodairaType::of(Family f) {
  if (f == Family::I || f == Family::IStar) throw ArgumentError("I_n and I_n* need an index");
  return KodairaType(f, 0);
}

KodairaType KodairaType::parse(const std::string& symbol) {
  if (symbol == "II") return of(Family::II);
  if (symbol == "III") return of(Family::III);
  if (symbol == "IV") return of(Family::IV);
  if (symbol == "IV*") return of(Family::IVStar);
  if (symbol == "III*") return of(Family::IIIStar);
  if (symbol == "II*") return of(Family::IIStar);
  if (symbol.size() >= 2 && symbol[0] == 'I') {
    bool star = symbol.back() == '*';
    std::string digits = symbol.substr(1, symbol.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      int n = std::stoi(digits);
      if (star) return KodairaType::star(n);
      return n == 0 ? good() : multiplicative(n);
    }
  }
  throw ArgumentError("unknown Kodaira symbol '" + symbol + "'");
}

int KodairaType::components() const {
  switch (family_) {
    case Family::I:
      return n_ == 0 ? 1 : n_;
    case Family::II:
      return 1;
    case Family::III:
      return 2;
    case Family::IV:
      return 3;
    case Family::IStar:
      return n_ + 5;
    case Family::IVStar:
      return 7;
    case Family::IIIStar:
      return 8;
    case Family::IIStar:
      return 9;
  }
  return 0;
}

std::string KodairaType::to_string() const {
  switch (family_) {
    case Family::I:
      return "I" + std::to_string(n_);
    case Family::II:
      return "II";
    case Family::III:
      return "III";
    case Family::IV:
      return "IV";
    case Family::IStar:
      return "I" + std::to_string(n_) + "*";
    case Family::IVStar:
      return "IV*";
    case Family::IIIStar:
      return "III*";
    case Family::IIStar:
      return "II*";
  }
  return "?";
}

std::string to_string(ReductionClass rc) {
  switch (rc) {
    case ReductionClass::Good:
      return "good";
    case ReductionClass::Split:
      return "split";
    case ReductionClass::Nonsplit:
      return "nonsplit";
    case ReductionClass::Additive:
      return "additive";
  }
  return "?";
}

std::string to_string(RootNumber w) {
  switch (w) {
    case RootNumber::Plus:
      return "+1";
    case RootNumber::Minus:
      return "-1";
    case RootNumber::Unsupported:
      return "unsupported";
  }
  return "?";
}

namespace {

// Arithmetic in F_p[T] / (f) for a monic cubic f, with coefficient
// vectors stored lowest degree first.
using Poly = std::vector<Integer>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce_mod(Poly f, const Integer& p) {
  for (auto& c : f) c = mod_positive(c, p);
  trim(f);
  return f;
}

Poly poly_mod(Poly a, const Poly& m, const Integer& p) {
  // m is nonzero with invertible leading coefficient.
  trim(a);
  Integer lead_inv;
  mpz_invert(lead_inv.get_mpz_t(), m.back().get_mpz_t(), p.get_mpz_t());
  while (a.size() >= m.size()) {
    Integer coef = mod_positive(a.back() * lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = mod_positive(a[shift + i] - coef * m[i], p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return reduce_mod(std::move(out), p);
}

Poly poly_gcd(Poly a, Poly b, const Integer& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Number of distinct roots in F_p of the separable cubic T^3 + bT^2 + cT + d.
int cubic_root_count(const Integer& b, const Integer& c, const Integer& d, const Integer& p) {
  if (p < 64) {
    int count = 0;
    for (unsigned long x = 0; x < p.get_ui(); ++x) {
      Integer v = ((Integer(x) + b) * x + c) * x + d;
      if (mod_positive(v, p) == 0) ++count;
    }
    return count;
  }
  Poly f = reduce_mod({d, c, b, Integer(1)}, p);
  // x^p mod f by square-and-multiply.
  Poly result{Integer(1)};
  Poly base{Integer(0), Integer(1)};
  for (long bit = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    result = poly_mod(poly_mul(result, result, p), f, p);
    if (mpz_tstbit(p.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) result = poly_mod(poly_mul(result, base, p), f, p);
  }
  // x^p - x
  result.resize(std::max<std::size_t>(result.size(), 2), Integer(0));
  result[1] -= 1;
  result = reduce_mod(std::move(result), p);
  Poly g = poly_gcd(f, result, p);
  if (g.empty()) return 3;  // x^p - x = 0 mod f: f splits completely
  return static_cast<int>(g.size()) - 1;
}

struct Coeffs {
  Integer a1, a2, a3, a4, a6;

  Invariants<Integer> invariants() const { return compute_invariants(std::array<Integer, 5>{a1, a2, a3, a4, a6}); }

  void rst(const Integer& r, const Integer& s, const Integer& t) {
    Integer n1 = a1 + 2 * s;
    Integer n2 = a2 - s * a1 + 3 * r - s * s;
    Integer n3 = a3 + r * a1 + 2 * t;
    Integer n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    Integer n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    a1 = n1;
    a2 = n2;
    a3 = n3;
    a4 = n4;
    a6 = n6;
  }
};

class PrimeContext {
 public:
  explicit PrimeContext(const Integer& p) : p_(p) {
    if (p_ != 2) mpz_invert(half_.get_mpz_t(), Integer(2).get_mpz_t(), p_.get_mpz_t());
  }

  const Integer& p() const { return p_; }
  bool divides(const Integer& x) const { return mpz_divisible_p(x.get_mpz_t(), p_.get_mpz_t()) != 0; }
  long val(const Integer& x) const { return x == 0 ? 1'000'000 : ord(x, p_); }
  Integer reduce(const Integer& x) const { return mod_positive(x, p_); }
  const Integer& half() const { return half_; }

  Integer inv(const Integer& x) const {
    Integer out;
    if (mpz_invert(out.get_mpz_t(), reduce(x).get_mpz_t(), p_.get_mpz_t()) == 0) {
      throw InternalError("non-invertible element in Tate's algorithm");
    }
    return out;
  }

  // Square root mod 2 or cube root mod 3: x^p = x in F_p.
  Integer root(const Integer& x) const { return reduce(x); }

  Integer exact(const Integer& x, const Integer& d) const {
    if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t())) throw InternalError("inexact division in Tate's algorithm");
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
  }

  // Does aX^2 + bX + c have a root in F_p?
  bool quad_has_root(const Integer& a, const Integer& b, const Integer& c) const {
    Integer ra = reduce(a), rb = reduce(b), rc = reduce(c);
    if (ra == 0) return rb != 0 || rc == 0;
    if (p_ == 2) return rc == 0 || reduce(ra + rb + rc) == 0;
    return is_square_mod(rb * rb - 4 * ra * rc, p_);
  }

 private:
  Integer p_;
  Integer half_;
};

}  // namespace

LocalDatum tate(const WeierstrassCurve& e, const Integer& p_in) {
  if (!is_prime(p_in)) throw ArgumentError("tate: " + to_string(p_in) + " is not prime");
  const PrimeContext ctx(p_in);
  const Integer& p = ctx.p();
  const Integer p2 = p * p;
  const Integer p3 = p2 * p;
  const Integer p4 = p2 * p2;

  Coeffs m{e.a1(), e.a2(), e.a3(), e.a4(), e.a6()};
  LocalDatum out;
  out.prime = p;

  const long initial_vd = ctx.val(e.discriminant());
  for (long rescales = 0;; ++rescales) {
    if (12 * rescales > initial_vd) throw InternalError("Tate's algorithm: rescaling loop exceeded ord_p(Delta)");
    auto inv = m.invariants();
    const long vd = ctx.val(inv.discriminant);
    out.v_delta_min = static_cast<int>(vd);
    if (vd == 0) {
      out.kodaira = KodairaType::good();
      out.tamagawa = 1;
      out.reduction = ReductionClass::Good;
      out.conductor_exponent = 0;
      return out;
    }

    // Move the singular point to (0,0): p | a3, a4, a6.
    Integer r, t;
    if (p == 2) {
      if (ctx.divides(inv.b2)) {
        r = ctx.root(m.a4);
        t = ctx.root(((r + m.a2) * r + m.a4) * r + m.a6);
      } else {
        Integer a1inv = ctx.inv(m.a1);
        r = a1inv * m.a3;
        t = a1inv * (m.a4 + r * r);
      }
    } else if (p == 3) {
      r = ctx.divides(inv.b2) ? ctx.root(-inv.b6) : Integer(-ctx.inv(inv.b2) * inv.b4);
      t = m.a1 * r + m.a3;
    } else {
      if (ctx.divides(inv.c4)) {
        r = -ctx.inv(Integer(12)) * inv.b2;
      } else {
        r = -ctx.inv(Integer(12) * inv.c4) * (inv.c6 + inv.b2 * inv.c4);
      }
      t = -ctx.half() * (m.a1 * r + m.a3);
    }
    r = ctx.reduce(r);
    t = ctx.reduce(t);
    m.rst(r, 0, t);
    inv = m.invariants();

    if (!ctx.divides(inv.c4)) {
      // Multiplicative: tangent slopes are the roots of T^2 + a1 T - a2.
      out.kodaira = KodairaType::multiplicative(static_cast<int>(vd));
      out.conductor_exponent = 1;
      if (ctx.quad_has_root(1, m.a1, -m.a2)) {
        out.reduction = ReductionClass::Split;
        out.tamagawa = static_cast<int>(vd);
      } else {
        out.reduction = ReductionClass::Nonsplit;
        out.tamagawa = vd % 2 == 0 ? 2 : 1;
      }
      return out;
    }

    out.reduction = ReductionClass::Additive;
    if (ctx.val(m.a6) < 2) {
      out.kodaira = KodairaType::of(KodairaType::Family::II);
      out.tamagawa = 1;
      out.conductor_exponent = static_cast<int>(vd);
      return out;
    }
    if (ctx.val(inv.b8) < 3) {
      out.kodaira = KodairaType::of(KodairaType::Family::III);
      out.tamagawa = 2;
      out.conductor_exponent = static_cast<int>(vd - 1);
      return out;
    }
    if (ctx.val(inv.b6) < 3) {
      out.kodaira = KodairaType::of(KodairaType::Family::IV);
      out.tamagawa = ctx.quad_has_root(1, ctx.exact(m.a3, p), -ctx.exact(m.a6, p2)) ? 3 : 1;
      out.conductor_exponent = static_cast<int>(vd - 2);
      return out;
    }

    // Now p | a1, a2; p^2 | a3, a4; p^3 | a6.
    Integer s;
    if (p == 2) {
      s = ctx.root(m.a2);
      t = p * ctx.root(ctx.exact(m.a6, p2));
    } else if (p == 3) {
      s = m.a1;
      t = m.a3;
    } else {
      s = -m.a1 * ctx.half();
      t = -m.a3 * ctx.half();
    }
    m.rst(0, s, t);

    // Auxiliary cubic T^3 + b T^2 + c T + d.
    const Integer b = ctx.exact(m.a2, p);
    const Integer c = ctx.exact(m.a4, p2);
    const Integer d = ctx.exact(m.a6, p3);
    const Integer w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    const Integer x = 3 * c - b * b;

    if (!ctx.divides(w)) {
      out.kodaira = KodairaType::star(0);
      out.tamagawa = 1 + cubic_root_count(b, c, d, p);
      out.conductor_exponent = static_cast<int>(vd - 4);
      return out;
    }

    if (!ctx.divides(x)) {
      // Double root: I_n^*.  Move it to T = 0 and peel off the chain.
      Integer root;
      if (p == 2) {
        root = ctx.root(c);
      } else if (p == 3) {
        root = c * ctx.inv(b);
      } else {
        root = (b * c - 9 * d) * ctx.inv(2 * x);
      }
      m.rst(p * ctx.reduce(root), 0, 0);
      long ix = 3, iy = 3;
      Integer mx = p2, my = p2;
      for (;;) {
        if (ix + iy - 5 > vd) throw InternalError("Tate's algorithm: I_n* chain longer than ord_p(Delta)");
        Integer a2t = ctx.exact(m.a2, p);
        Integer a3t = ctx.exact(m.a3, my);
        Integer a4t = ctx.exact(m.a4, p * mx);
        Integer a6t = ctx.exact(m.a6, mx * my);
        if (!ctx.divides(a3t * a3t + 4 * a6t)) {
          out.tamagawa = ctx.quad_has_root(1, a3t, -a6t) ? 4 : 2;
          break;
        }
        Integer ty = (p == 2) ? Integer(my * ctx.root(a6t)) : Integer(my * ctx.reduce(-a3t * ctx.half()));
        m.rst(0, 0, ty);
        my *= p;
        ++iy;
        a2t = ctx.exact(m.a2, p);
        a3t = ctx.exact(m.a3, my);
        a4t = ctx.exact(m.a4, p * mx);
        a6t = ctx.exact(m.a6, mx * my);
        if (!ctx.divides(a4t * a4t - 4 * a6t * a2t)) {
          out.tamagawa = ctx.quad_has_root(a2t, a4t, a6t) ? 4 : 2;
          break;
        }
        Integer rx = (p == 2) ? Integer(mx * ctx.root(a6t * ctx.inv(a2t)))
                              : Integer(mx * ctx.reduce(-a4t * ctx.inv(2 * a2t)));
        m.rst(rx, 0, 0);
        mx *= p;
        ++ix;
      }
      out.kodaira = KodairaType::star(static_cast<int>(ix + iy - 5));
      out.conductor_exponent = static_cast<int>(vd - ix - iy + 1);
      return out;
    }

    // Triple root: move it to T = 0.
    Integer root;
    if (p == 2) {
      root = b;
    } else if (p == 3) {
      root = ctx.root(-d);
    } else {
      root = -b * ctx.inv(3);
    }
    m.rst(p * ctx.reduce(root), 0, 0);
    Integer a3t = ctx.exact(m.a3, p2);
    Integer a6t = ctx.exact(m.a6, p4);
    if (!ctx.divides(a3t * a3t + 4 * a6t)) {
      out.kodaira = KodairaType::of(KodairaType::Family::IVStar);
      out.tamagawa = ctx.quad_has_root(1, a3t, -a6t) ? 3 : 1;
      out.conductor_exponent = static_cast<int>(vd - 6);
      return out;
    }
    Integer tt = (p == 2) ? Integer(-p2 * ctx.root(a6t)) : Integer(p2 * ctx.reduce(-a3t * ctx.half()));
    m.rst(0, 0, tt);
    if (ctx.val(m.a4) < 4) {
      out.kodaira = KodairaType::of(KodairaType::Family::IIIStar);
      out.tamagawa = 2;
      out.conductor_exponent = static_cast<int>(vd - 7);
      return out;
    }
    if (ctx.val(m.a6) < 6) {
      out.kodaira = KodairaType::of(KodairaType::Family::IIStar);
      out.tamagawa = 1;
      out.conductor_exponent = static_cast<int>(vd - 8);
      return out;
    }
    // Not minimal at p: scale by p and start over.
    m.a1 = ctx.exact(m.a1, p);
    m.a2 = ctx.exact(m.a2, p2);
    m.a3 = ctx.exact(m.a3, p3);
    m.a4 = ctx.exact(m.a4, p4);
    m.a6 = ctx.exact(m.a6, p3 * p3);
  }
}

int c_infinity(const WeierstrassCurve& e) { return e.discriminant() > 0 ? 2 : 1; }

std::vector<Integer> bad_primes(const WeierstrassCurve& e, const FactorBudget& budget) {
  return factor(minimal_model(e).curve.discriminant(), budget).primes();
}

GlobalTamagawa global_tamagawa(const WeierstrassCurve& e, const FactorBudget& budget) {
  GlobalTamagawa out;
  out.product = 1;
  out.conductor = 1;
  // Any integral model has the bad primes of the minimal one among the
  // primes dividing its discriminant; Tate's algorithm sorts out the rest.
  for (const auto& p : factor(e.discriminant(), budget).primes()) {
    LocalDatum d = tate(e, p);
    if (d.reduction == ReductionClass::Good) continue;
    out.product *= d.tamagawa;
    Integer pf;
    mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d.conductor_exponent));
    out.conductor *= pf;
    out.local.push_back(std::move(d));
  }
  return out;
}

RootNumberDatum local_root_number(const WeierstrassCurve& e, const Place& place) {
  Rational j = e.j_invariant();
  if (j == 0 || j == 1728) throw UnsupportedDomain("root number table needs j != 0, 1728");
  RootNumberDatum out{place, RootNumber::Unsupported};
  if (place.is_infinite()) {
    out.value = RootNumber::Minus;
    return out;
  }
  switch (tate(e, *place.prime).reduction) {
    case ReductionClass::Good:
    case ReductionClass::Nonsplit:
      out.value = RootNumber::Plus;
      break;
    case ReductionClass::Split:
      out.value = RootNumber::Minus;
      break;
    case ReductionClass::Additive:
      out.value = RootNumber::Unsupported;
      break;
  }
  return out;
}

int global_root_number_semistable(const WeierstrassCurve& e, const FactorBudget& budget) {
  Rational j = e.j_invariant();
  if (j == 0 || j == 1728) throw UnsupportedDomain("root number table needs j != 0, 1728");
  int sign = -1;  // archimedean place
  for (const auto& d : global_tamagawa(e, budget).local) {
    if (d.reduction == ReductionClass::Additive) {
      throw UnsupportedDomain("additive reduction at " + to_string(d.prime) + "; curve is not semi-stable");
    }
    if (d.reduction == ReductionClass::Split) sign = -sign;
  }
  return sign;
}

}  // namespace tamagawa
