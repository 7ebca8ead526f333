#pragma once

// Exact integers and rationals, p-adic valuations, primality and
// factorization.  Integer and Rational are GMP values; every rational
// produced here is canonical (lowest terms, positive denominator).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tamagawa {

using Integer = mpz_class;
using Rational = mpq_class;

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an invariant that holds by theorem fails at run time.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// num/den in lowest terms.  Throws ArgumentError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "7", "-7/3" or "14/6".
Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

/// ord_p of a value; ord_p(0) is the dedicated infinite valuation.
class Valuation {
 public:
  constexpr Valuation(long v) : value_(v) {}  // NOLINT(implicit)
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return infinite_; }
  long value() const {
    if (infinite_) throw ArgumentError("valuation of zero is infinite");
    return value_;
  }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

 private:
  constexpr Valuation() : value_(0), infinite_(true) {}
  long value_;
  bool infinite_ = false;
};

std::string to_string(const Valuation& v);

/// ord_p(x).  Throws ArgumentError when p is not prime.
Valuation valuation(const Integer& x, const Integer& p);
Valuation valuation(const Rational& x, const Integer& p);

/// Valuation without the primality check; p must be a prime > 1 and
/// x nonzero.  Used on hot paths where p comes from a factorization.
long ord(const Integer& x, const Integer& p);

/// Exact primality.  Deterministic Miller-Rabin below 3.3e24, a
/// Pocklington certificate above; throws PrimalityUnknown when neither
/// decides within the default budget.
bool is_prime(const Integer& n);

class PrimalityUnknown : public std::runtime_error {
 public:
  explicit PrimalityUnknown(const Integer& n);
  Integer candidate;
};

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  Integer value() const;
  std::vector<Integer> primes() const;
  unsigned exponent_of(const Integer& p) const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Effort limits for factor().  The defaults cover every number that
/// arises in the family scans by a wide margin.
struct FactorBudget {
  unsigned long trial_limit = 1'000'000;
  std::uint64_t rho_iterations = 4'000'000;
};

/// Carries whatever was split off before the budget ran out, plus the
/// composite (or uncertified) cofactors that remain.
class IncompleteFactorization : public std::runtime_error {
 public:
  IncompleteFactorization(Factorization partial, std::vector<Integer> remaining);
  Factorization partial;
  std::vector<Integer> remaining;
};

/// Complete factorization of n != 0.  Every reported prime is certified
/// by is_prime.
Factorization factor(const Integer& n, const FactorBudget& budget = {});

/// Merges two factorizations of n and m into one of n*m.
Factorization multiply(const Factorization& lhs, const Factorization& rhs);

/// Primes below `limit` (cached sieve).
const std::vector<unsigned long>& small_primes(unsigned long limit = 1'000'000);

/// Quadratic residue test modulo an odd prime; 0 counts as a square.
bool is_square_mod(const Integer& a, const Integer& p);

Integer floor_div(const Integer& a, const Integer& b);
Integer mod_positive(const Integer& a, const Integer& m);

}  // namespace tamagawa
