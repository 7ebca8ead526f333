#include "tamagawa/torsion.hpp"

#include <numeric>
#include <set>

namespace tamagawa {

namespace {

using Coefficients = std::array<Rational, 5>;

Coefficients rational_coefficients(const WeierstrassCurve& e) {
  const auto& a = e.coefficients();
  return {Rational(a[0]), Rational(a[1]), Rational(a[2]), Rational(a[3]), Rational(a[4])};
}

bool satisfies(const Coefficients& a, const RationalPoint& p) {
  if (p.infinity) return true;
  const auto& [a1, a2, a3, a4, a6] = a;
  Rational lhs = p.y * p.y + a1 * p.x * p.y + a3 * p.y;
  Rational rhs = ((p.x + a2) * p.x + a4) * p.x + a6;
  return lhs == rhs;
}

RationalPoint negate_on(const Coefficients& a, const RationalPoint& p) {
  if (p.infinity) return p;
  Rational y = -p.y - a[0] * p.x - a[2];
  y.canonicalize();
  return RationalPoint::affine(p.x, y);
}

RationalPoint add_on(const Coefficients& a, const RationalPoint& p, const RationalPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const auto& [a1, a2, a3, a4, a6] = a;
  Rational lambda, nu;
  if (p.x != q.x) {
    Rational dx = q.x - p.x;
    lambda = (q.y - p.y) / dx;
    nu = (p.y * q.x - q.y * p.x) / dx;
  } else {
    Rational denom = 2 * p.y + a1 * p.x + a3;
    if (p.y + q.y + a1 * q.x + a3 == 0 || denom == 0) return RationalPoint::at_infinity();
    lambda = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / denom;
    nu = (-p.x * p.x * p.x + a4 * p.x + 2 * a6 - a3 * p.y) / denom;
  }
  Rational x = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  Rational y = -(lambda + a1) * x - nu - a3;
  x.canonicalize();
  y.canonicalize();
  return RationalPoint::affine(x, y);
}

void require_on(const Coefficients& a, const RationalPoint& p) {
  if (!satisfies(a, p)) throw ArgumentError("point (" + to_string(p.x) + ", " + to_string(p.y) + ") is not on the curve");
}

std::optional<int> order_on(const Coefficients& a, const RationalPoint& p) {
  RationalPoint q = p;
  for (int k = 1; k <= 12; ++k) {
    if (q.infinity) return k;
    q = add_on(a, q, p);
  }
  return std::nullopt;
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// All integer roots of X^3 + A X + C, by bisection on the intervals
// where the cubic is monotone.
std::vector<Integer> integer_roots(const Integer& A, const Integer& C) {
  auto f = [&](const Integer& x) -> Integer { return (x * x + A) * x + C; };
  Integer bound = 1 + std::max(abs(A), abs(C));
  struct Segment {
    Integer lo, hi;
    bool increasing;
  };
  std::vector<Segment> segments;
  if (A >= 0) {
    segments.push_back({-bound, bound, true});
  } else {
    Integer q = -A / 3;  // floor, since -A > 0
    Integer lo = isqrt(q);
    Integer hi = (lo * lo * 3 == -A) ? lo : Integer(lo + 1);
    segments.push_back({-bound, -hi, true});
    segments.push_back({-lo, lo, false});
    segments.push_back({hi, bound, true});
  }
  std::vector<Integer> roots;
  for (auto& seg : segments) {
    Integer lo = seg.lo, hi = seg.hi;
    if (lo > hi) continue;
    // Find the first x in [lo, hi] with f(x) >= 0 (increasing) or <= 0.
    auto reached = [&](const Integer& x) {
      Integer v = f(x);
      return seg.increasing ? v >= 0 : v <= 0;
    };
    if (!reached(hi)) continue;
    while (lo < hi) {
      Integer mid = floor_div(lo + hi, 2);
      if (reached(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (f(lo) == 0 && (roots.empty() || roots.back() != lo)) roots.push_back(lo);
  }
  return roots;
}

// Positive Y with Y^2 | n, from the factorization of n.
std::vector<Integer> square_divisor_roots(const Factorization& n) {
  std::vector<Integer> out{Integer(1)};
  for (const auto& pp : n.factors) {
    std::size_t existing = out.size();
    Integer power = 1;
    for (unsigned k = 1; 2 * k <= pp.exponent; ++k) {
      power *= pp.prime;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * power);
    }
  }
  return out;
}

}  // namespace

bool on_curve(const WeierstrassCurve& e, const RationalPoint& p) { return satisfies(rational_coefficients(e), p); }

bool on_curve(const RationalModel& e, const RationalPoint& p) { return satisfies(e.coefficients(), p); }

RationalPoint group_law_add(const WeierstrassCurve& e, const RationalPoint& p, const RationalPoint& q) {
  auto a = rational_coefficients(e);
  require_on(a, p);
  require_on(a, q);
  return add_on(a, p, q);
}

RationalPoint negate(const WeierstrassCurve& e, const RationalPoint& p) {
  auto a = rational_coefficients(e);
  require_on(a, p);
  return negate_on(a, p);
}

RationalPoint multiply(const WeierstrassCurve& e, const RationalPoint& p, long n) {
  auto a = rational_coefficients(e);
  require_on(a, p);
  RationalPoint base = n < 0 ? negate_on(a, p) : p;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  RationalPoint acc = RationalPoint::at_infinity();
  while (k > 0) {
    if (k & 1) acc = add_on(a, acc, base);
    base = add_on(a, base, base);
    k >>= 1;
  }
  return acc;
}

std::optional<int> point_order(const WeierstrassCurve& e, const RationalPoint& p) {
  auto a = rational_coefficients(e);
  require_on(a, p);
  return order_on(a, p);
}

RationalPoint pull_back(const Transformation& t, const RationalPoint& p) {
  if (p.infinity) return p;
  Rational u2 = t.u * t.u;
  Rational x = u2 * p.x + t.r;
  Rational y = u2 * t.u * p.y + t.s * u2 * p.x + t.t;
  x.canonicalize();
  y.canonicalize();
  return RationalPoint::affine(x, y);
}

std::string TorsionStructure::shape() const {
  if (n1 == 1) return "Z/" + std::to_string(n2);
  return "Z/" + std::to_string(n1) + "xZ/" + std::to_string(n2);
}

bool in_mazur_list(int n1, int n2) {
  if (n1 == 1) return (n2 >= 1 && n2 <= 10) || n2 == 12;
  if (n1 == 2) return n2 == 2 || n2 == 4 || n2 == 6 || n2 == 8;
  return false;
}

std::pair<int, int> parse_torsion_shape(const std::string& shape) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.size() > 3 || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ArgumentError("malformed torsion shape '" + shape + "'");
    }
    return std::stoi(s);
  };
  if (shape.rfind("Z/", 0) != 0) throw ArgumentError("malformed torsion shape '" + shape + "'");
  auto cross = shape.find("xZ/");
  std::pair<int, int> out;
  if (cross == std::string::npos) {
    out = {1, number(shape.substr(2))};
  } else {
    out = {number(shape.substr(2, cross - 2)), number(shape.substr(cross + 3))};
  }
  if (!in_mazur_list(out.first, out.second)) throw ArgumentError("torsion shape '" + shape + "' is not in Mazur's list");
  return out;
}

long count_points(const WeierstrassCurve& e, unsigned long p) {
  if (p < 3 || !is_prime(Integer(p))) throw ArgumentError("count_points needs an odd prime");
  if (mpz_divisible_ui_p(e.discriminant().get_mpz_t(), p)) throw ArgumentError("count_points needs good reduction");
  const auto& inv = e.invariants();
  auto red = [p](const Integer& v) { return mod_positive(v, Integer(p)).get_ui(); };
  const unsigned long b2 = red(inv.b2), b4 = red(inv.b4 * 2), b6 = red(inv.b6);
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (unsigned long y = 1; y < p; ++y) chi[(y * y) % p] = 1;
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  long count = static_cast<long>(p) + 1;
  for (unsigned long x = 0; x < p; ++x) {
    unsigned long v = (((4 * x + b2) % p * x + b4) % p * x + b6) % p;
    count += chi[v];
  }
  return count;
}

int torsion_bound(const WeierstrassCurve& e) {
  long g = 0;
  int used = 0;
  for (unsigned long p = 5; used < 2; p += 2) {
    if (!is_prime(Integer(p)) || mpz_divisible_ui_p(e.discriminant().get_mpz_t(), p)) continue;
    g = std::gcd(g, count_points(e, p));
    ++used;
  }
  return static_cast<int>(g);
}

TorsionStructure torsion_subgroup(const WeierstrassCurve& e, const FactorBudget& budget) {
  const MinimalModel mm = minimal_model(e);
  const WeierstrassCurve& m = mm.curve;
  const int bound = torsion_bound(m);
  TorsionStructure out;
  if (bound == 1) return out;

  const auto coeffs = rational_coefficients(m);
  const auto& inv = m.invariants();
  // Y^2 = X^3 - 27 c4 X - 54 c6 with X = 36x + 3b2, Y = 108(2y + a1 x + a3).
  const Integer A = -27 * inv.c4;
  const Integer B = -54 * inv.c6;
  Factorization disc = factor(m.discriminant(), budget);
  disc = multiply(disc, Factorization{1, {{Integer(2), 8}, {Integer(3), 12}}});

  std::set<RationalPoint> torsion{RationalPoint::at_infinity()};
  auto consider = [&](const Integer& X, const Integer& Y) {
    Rational x = make_rational(X - 3 * inv.b2, 36);
    Rational y = (Rational(Y, 108) - coeffs[0] * x - coeffs[2]) / 2;
    y.canonicalize();
    RationalPoint p = RationalPoint::affine(x, y);
    if (!satisfies(coeffs, p)) throw InternalError("short model point does not map onto the curve");
    if (order_on(coeffs, p)) torsion.insert(p);
  };
  for (const Integer& Y : square_divisor_roots(disc)) {
    for (const Integer& X : integer_roots(A, B - Y * Y)) {
      consider(X, Y);
      consider(X, -Y);
    }
  }
  for (const Integer& X : integer_roots(A, B)) consider(X, 0);

  const int n = static_cast<int>(torsion.size());
  if (bound % n != 0) throw InternalError("torsion order " + std::to_string(n) + " does not divide the bound");

  std::vector<RationalPoint> two_torsion;
  const RationalPoint* top = nullptr;
  std::vector<std::pair<RationalPoint, int>> orders;
  for (const auto& p : torsion) {
    int k = p.infinity ? 1 : *order_on(coeffs, p);
    if (k == 2) two_torsion.push_back(p);
    orders.emplace_back(p, k);
  }
  const bool full_two = two_torsion.size() == 3;
  out.n1 = full_two ? 2 : 1;
  out.n2 = n / out.n1;
  if (!in_mazur_list(out.n1, out.n2)) {
    throw InternalError("torsion structure " + out.shape() + " outside Mazur's list for " + e.to_string());
  }
  for (const auto& [p, k] : orders) {
    if (k == out.n2) {
      top = &p;
      break;
    }
  }
  if (out.n2 > 1 && top == nullptr) throw InternalError("no torsion point of order " + std::to_string(out.n2));

  std::vector<std::pair<RationalPoint, int>> gens;
  if (full_two) {
    RationalPoint inside = multiply(m, *top, out.n2 / 2);
    for (const auto& q : two_torsion) {
      if (!(q == inside)) {
        gens.emplace_back(q, 2);
        break;
      }
    }
  }
  if (out.n2 > 1) gens.emplace_back(*top, out.n2);

  for (const auto& [g, k] : gens) {
    RationalPoint back = pull_back(mm.transformation, g);
    if (point_order(e, back) != k) throw InternalError("generator order certification failed");
    out.generators.push_back(back);
  }
  return out;
}

}  // namespace tamagawa
