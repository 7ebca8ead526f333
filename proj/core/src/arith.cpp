#include "tamagawa/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

namespace tamagawa {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ArgumentError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer parse_integer(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty() || (s.size() == 1 && s[0] == '-')) throw ArgumentError("not an integer: '" + text + "'");
  for (std::size_t i = (s[0] == '-' ? 1 : 0); i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ArgumentError("not an integer: '" + text + "'");
  }
  return Integer(s, 10);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Integer& n) { return n.get_str(10); }

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const Valuation& v) {
  return v.is_infinite() ? std::string("inf") : std::to_string(v.value());
}

long ord(const Integer& x, const Integer& p) {
  if (x == 0) throw InternalError("ord of zero");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

Valuation valuation(const Integer& x, const Integer& p) {
  if (!is_prime(p)) throw ArgumentError("valuation at non-prime " + to_string(p));
  if (x == 0) return Valuation::infinity();
  return ord(x, p);
}

Valuation valuation(const Rational& x, const Integer& p) {
  if (!is_prime(p)) throw ArgumentError("valuation at non-prime " + to_string(p));
  if (x == 0) return Valuation::infinity();
  return ord(x.get_num(), p) - ord(x.get_den(), p);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod_positive(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_square_mod(const Integer& a, const Integer& p) {
  return mpz_legendre(mod_positive(a, p).get_mpz_t(), p.get_mpz_t()) >= 0;
}

const std::vector<unsigned long>& small_primes(unsigned long limit) {
  static std::mutex guard;
  static std::map<unsigned long, std::vector<unsigned long>> cache;
  std::lock_guard lock(guard);
  auto it = cache.find(limit);
  if (it != cache.end()) return it->second;
  std::vector<bool> composite(limit + 1, false);
  std::vector<unsigned long> primes;
  for (unsigned long i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (unsigned long j = i * i; j < limit; j += i) composite[j] = true;
  }
  return cache.emplace(limit, std::move(primes)).first->second;
}

namespace {

// Largest n for which Miller-Rabin with the first thirteen prime bases
// is known to be exact.
const Integer kDeterministicBound("3317044064679887385961981", 10);
constexpr std::array<unsigned long, 13> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin(const Integer& n, unsigned long base) {
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  Integer a(base);
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool probable_prime(const Integer& n) {
  for (auto b : kWitnesses) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  for (auto b : kWitnesses) {
    if (!miller_rabin(n, b)) return false;
  }
  return true;
}

// Brent's variant of Pollard rho.  Returns a nontrivial divisor or
// nullopt when the iteration budget is spent.
std::optional<Integer> rho_split(const Integer& n, std::uint64_t& budget) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  for (unsigned long c = 1; budget > 0; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys, diff;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto step = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1 && budget > 0) {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        budget = budget > lim ? budget - lim : 0;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time.
      do {
        step(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return std::nullopt;
}

std::optional<Integer> perfect_power_root(const Integer& n) {
  if (!mpz_perfect_power_p(n.get_mpz_t())) return std::nullopt;
  unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long k = bits; k >= 2; --k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1) return root;
  }
  return std::nullopt;
}

void add_prime(std::map<Integer, unsigned, std::less<>>& acc, const Integer& p, unsigned e) {
  acc[p] += e;
}

Factorization to_factorization(int sign, const std::map<Integer, unsigned, std::less<>>& acc) {
  Factorization f;
  f.sign = sign;
  for (const auto& [p, e] : acc) f.factors.push_back({p, e});
  return f;
}

std::optional<bool> pocklington(const Integer& n);

bool certified_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < kDeterministicBound) return probable_prime(n);
  if (!probable_prime(n)) return false;
  if (auto verdict = pocklington(n)) return *verdict;
  throw PrimalityUnknown(n);
}

// Pocklington-Lehmer: if n-1 = F*R with F > sqrt(n) fully factored and
// every prime q | F has a witness a with a^(n-1) = 1 and
// gcd(a^((n-1)/q) - 1, n) = 1, then n is prime.  nullopt: undecided.
std::optional<bool> pocklington(const Integer& n) {
  Integer n1 = n - 1;
  Factorization partial;
  try {
    partial = factor(n1);
  } catch (const IncompleteFactorization& e) {
    partial = e.partial;
  } catch (const PrimalityUnknown&) {
    return std::nullopt;
  }
  Integer f = 1;
  for (const auto& pp : partial.factors) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    f *= pe;
  }
  if (f * f <= n) return std::nullopt;
  Integer t, g, e;
  for (const auto& pp : partial.factors) {
    bool witnessed = false;
    for (unsigned long a = 2; a < 200 && !witnessed; ++a) {
      Integer base(a);
      mpz_powm(t.get_mpz_t(), base.get_mpz_t(), n1.get_mpz_t(), n.get_mpz_t());
      if (t != 1) return false;  // Fermat witness: composite
      e = n1 / pp.prime;
      mpz_powm(t.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
      t -= 1;
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      witnessed = (g == 1);
    }
    if (!witnessed) return std::nullopt;
  }
  return true;
}

}  // namespace

PrimalityUnknown::PrimalityUnknown(const Integer& n)
    : std::runtime_error("could not certify primality of " + to_string(n)), candidate(n) {}

IncompleteFactorization::IncompleteFactorization(Factorization partial_, std::vector<Integer> remaining_)
    : std::runtime_error("incomplete factorization"), partial(std::move(partial_)), remaining(std::move(remaining_)) {
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < 1'000'000) {
    unsigned long v = n.get_ui();
    if (v < 4) return true;
    if (v % 2 == 0) return false;
    for (unsigned long d = 3; d * d <= v; d += 2) {
      if (v % d == 0) return false;
    }
    return true;
  }
  return certified_prime(n);
}

Integer Factorization::value() const {
  Integer v = sign;
  for (const auto& pp : factors) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    v *= pe;
  }
  return v;
}

std::vector<Integer> Factorization::primes() const {
  std::vector<Integer> out;
  out.reserve(factors.size());
  for (const auto& pp : factors) out.push_back(pp.prime);
  return out;
}

unsigned Factorization::exponent_of(const Integer& p) const {
  for (const auto& pp : factors) {
    if (pp.prime == p) return pp.exponent;
  }
  return 0;
}

Factorization factor(const Integer& n, const FactorBudget& budget) {
  if (n == 0) throw ArgumentError("cannot factor zero");
  int sign = n < 0 ? -1 : 1;
  Integer m = abs(n);
  std::map<Integer, unsigned, std::less<>> acc;

  const auto& primes = small_primes(std::max<unsigned long>(budget.trial_limit, 3));
  bool below_square = false;
  for (unsigned long p : primes) {
    if (m == 1) break;
    if (Integer(p) * p > m) {
      below_square = true;
      break;
    }
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      add_prime(acc, Integer(p), e);
    }
  }
  if (m == 1) return to_factorization(sign, acc);
  // No prime factor up to sqrt(m) remains.
  if (below_square) {
    add_prime(acc, m, 1);
    return to_factorization(sign, acc);
  }

  std::uint64_t rho_budget = budget.rho_iterations;
  std::vector<std::pair<Integer, unsigned>> pending{{m, 1}};
  std::vector<Integer> stuck;
  while (!pending.empty()) {
    auto [c, mult] = pending.back();
    pending.pop_back();
    if (c == 1) continue;
    bool prime = false;
    try {
      prime = is_prime(c);
    } catch (const PrimalityUnknown&) {
      stuck.push_back(c);
      continue;
    }
    if (prime) {
      add_prime(acc, c, mult);
      continue;
    }
    if (auto root = perfect_power_root(c)) {
      unsigned k = 0;
      Integer rest = c;
      while (mpz_divisible_p(rest.get_mpz_t(), root->get_mpz_t())) {
        rest /= *root;
        ++k;
      }
      pending.emplace_back(*root, mult * k);
      if (rest != 1) pending.emplace_back(rest, mult);
      continue;
    }
    auto d = rho_split(c, rho_budget);
    if (!d) {
      stuck.push_back(c);
      continue;
    }
    Integer other = c / *d;
    pending.emplace_back(*d, mult);
    pending.emplace_back(other, mult);
  }

  Factorization f = to_factorization(sign, acc);
  if (!stuck.empty()) throw IncompleteFactorization(std::move(f), std::move(stuck));
  return f;
}

Factorization multiply(const Factorization& lhs, const Factorization& rhs) {
  std::map<Integer, unsigned, std::less<>> acc;
  for (const auto& pp : lhs.factors) add_prime(acc, pp.prime, pp.exponent);
  for (const auto& pp : rhs.factors) add_prime(acc, pp.prime, pp.exponent);
  return to_factorization(lhs.sign * rhs.sign, acc);
}

}  // namespace tamagawa
