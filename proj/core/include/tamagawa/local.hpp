#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tamagawa/curve.hpp"

namespace tamagawa {

/// Kodaira symbol of the special fibre.
class KodairaType {
 public:
  enum class Family { I, II, III, IV, IStar, IVStar, IIIStar, IIStar };

  static KodairaType good() { return KodairaType(Family::I, 0); }
  static KodairaType multiplicative(int n);  // I_n, n >= 1
  static KodairaType star(int n);            // I_n^*, n >= 0
  static KodairaType of(Family f);           // II, III, IV, IV*, III*, II*

  /// Parses "I0", "I4", "II", "I2*", "IV*", ...
  static KodairaType parse(const std::string& symbol);

  Family family() const { return family_; }
  int index() const { return n_; }
  bool is_good() const { return family_ == Family::I && n_ == 0; }
  bool is_multiplicative() const { return family_ == Family::I && n_ > 0; }
  bool is_additive() const { return family_ != Family::I; }

  /// Number of irreducible components of the special fibre (over the
  /// algebraic closure of the residue field).
  int components() const;

  std::string to_string() const;
  friend bool operator==(const KodairaType&, const KodairaType&) = default;

 private:
  KodairaType(Family f, int n) : family_(f), n_(n) {}
  Family family_;
  int n_;
};

enum class ReductionClass { Good, Split, Nonsplit, Additive };

std::string to_string(ReductionClass rc);

struct LocalDatum {
  Integer prime;
  KodairaType kodaira = KodairaType::good();
  int tamagawa = 1;
  ReductionClass reduction = ReductionClass::Good;
  int v_delta_min = 0;
  int conductor_exponent = 0;

  friend bool operator==(const LocalDatum&, const LocalDatum&) = default;
};

/// Tate's algorithm at p.  The input only needs to be integral; the
/// algorithm minimizes at p along the way.
LocalDatum tate(const WeierstrassCurve& e, const Integer& p);

/// Number of connected components of E(R): 2 when the discriminant is positive.
int c_infinity(const WeierstrassCurve& e);

struct GlobalTamagawa {
  Integer product;
  std::vector<LocalDatum> local;  // one entry per bad prime, increasing
  Integer conductor;
};

/// Tate's algorithm at every prime dividing the minimal discriminant.
/// Propagates IncompleteFactorization.
GlobalTamagawa global_tamagawa(const WeierstrassCurve& e, const FactorBudget& budget = {});

/// Primes dividing the minimal discriminant.
std::vector<Integer> bad_primes(const WeierstrassCurve& e, const FactorBudget& budget = {});

class UnsupportedDomain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A place of Q: a prime, or the archimedean place when empty.
struct Place {
  std::optional<Integer> prime;
  static Place infinity() { return {}; }
  static Place finite(Integer p) { return {std::move(p)}; }
  bool is_infinite() const { return !prime.has_value(); }
};

enum class RootNumber { Plus, Minus, Unsupported };

struct RootNumberDatum {
  Place place;
  RootNumber value = RootNumber::Unsupported;
};

std::string to_string(RootNumber w);

/// Local root number; `Unsupported` at additive places.  Throws
/// UnsupportedDomain when j is 0 or 1728.
RootNumberDatum local_root_number(const WeierstrassCurve& e, const Place& place);

/// (-1)^(1 + #split places) for a semi-stable curve.  Throws
/// UnsupportedDomain for additive primes or j in {0, 1728}.
int global_root_number_semistable(const WeierstrassCurve& e, const FactorBudget& budget = {});

}  // namespace tamagawa
