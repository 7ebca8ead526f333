#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamagawa/families.hpp"
#include "tamagawa/fixtures.hpp"
#include "tamagawa/torsion.hpp"

namespace tamagawa {

/// Where a curve with a 3-torsion point lands when 3 does not divide c(E).
enum class Classification {
  Divisible,            // 3 | c(E)
  ExceptionA,           // semi-stable away from 3, <= 1 split place, w_3 = +1
  ExceptionACandidate,  // as above but w_3 is not computable here
  ExceptionB,           // type II or IV at 3
  RatioImpliesSha,      // ord_3 of the isogeny Tamagawa ratio >= 2, so 9 | Sha
  Unclassified,         // none of the above: contradicts the classification
};

std::string to_string(Classification c);

struct VerdictReport {
  CurveKey key;
  std::optional<WeierstrassCurve> minimal;
  std::optional<TorsionStructure> torsion;
  int c_inf = 1;
  Integer tamagawa_product = 1;
  Factorization tamagawa_factored;
  std::vector<LocalDatum> local;
  Integer conductor = 1;
  bool divisible = false;  // |E(Q)_tors| divides c_inf * c(E)

  std::optional<std::string> fixture_label;
  std::optional<long> sha;
  std::optional<int> manin;
  std::optional<bool> optimal;

  std::optional<Classification> classification;
  std::optional<IsogenyPair> isogeny;  // filled when the ledger was consulted
  std::vector<std::string> notes;
  bool incomplete = false;  // factorization budget ran out
};

/// Divisibility of c_inf * c(E) by the torsion order, with fixture
/// metadata when the curve is in `fixtures`.  Never throws
/// IncompleteFactorization; the report is flagged instead.
VerdictReport check_divisibility(const WeierstrassCurve& e, const FixtureTable* fixtures = nullptr,
                                 const FactorBudget& budget = {});

/// A model y^2 + a xy + b y = x^3 of E sending `p` to (0,0).  Requires
/// p to have order 3.
ThreeTorsionNormalForm three_torsion_normal_form(const WeierstrassCurve& e, const RationalPoint& p,
                                                 const FactorBudget& budget = {});

/// check_divisibility plus the exception-family classification for a
/// curve with a rational point of order 3.  Throws ArgumentError when
/// there is no such point.
VerdictReport classify_three_torsion(const WeierstrassCurve& e, const FixtureTable* fixtures = nullptr,
                                     const FactorBudget& budget = {});

}  // namespace tamagawa
