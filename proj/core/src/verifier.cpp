#include "tamagawa/verifier.hpp"

namespace tamagawa {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Divisible:
      return "divisible";
    case Classification::ExceptionA:
      return "exception-a";
    case Classification::ExceptionACandidate:
      return "exception-a-candidate";
    case Classification::ExceptionB:
      return "exception-b";
    case Classification::RatioImpliesSha:
      return "ratio-implies-9-divides-sha";
    case Classification::Unclassified:
      return "unclassified";
  }
  return "?";
}

VerdictReport check_divisibility(const WeierstrassCurve& e, const FixtureTable* fixtures, const FactorBudget& budget) {
  VerdictReport r;
  MinimalModel mm = minimal_model(e);
  r.key = {mm.curve.c4(), mm.curve.c6()};
  r.minimal = mm.curve;
  r.c_inf = c_infinity(e);
  if (fixtures != nullptr) {
    if (const FixtureCurve* f = fixtures->find(r.key)) {
      r.fixture_label = f->label;
      r.sha = f->sha;
      r.manin = f->manin;
      r.optimal = f->optimal;
    }
  }
  try {
    GlobalTamagawa g = global_tamagawa(mm.curve, budget);
    r.tamagawa_product = g.product;
    r.local = std::move(g.local);
    r.conductor = g.conductor;
    r.tamagawa_factored = factor(r.tamagawa_product, budget);
    r.torsion = torsion_subgroup(e, budget);
  } catch (const IncompleteFactorization& err) {
    r.incomplete = true;
    r.notes.push_back(std::string("incomplete: ") + err.what());
    return r;
  }
  Integer total = r.tamagawa_product * r.c_inf;
  r.divisible = mpz_divisible_ui_p(total.get_mpz_t(), static_cast<unsigned long>(r.torsion->order())) != 0;
  return r;
}

ThreeTorsionNormalForm three_torsion_normal_form(const WeierstrassCurve& e, const RationalPoint& p,
                                                 const FactorBudget& budget) {
  if (point_order(e, p) != 3) throw ArgumentError("three_torsion_normal_form needs a point of order 3");
  // Move p to the origin, then make the tangent there horizontal.
  Transformation shift;
  shift.r = p.x;
  shift.t = p.y;
  RationalModel moved = apply_transformation(e, shift);
  const auto& a = moved.coefficients();
  if (a[2] == 0) throw InternalError("point of order 3 became 2-torsion");
  Transformation shear;
  shear.s = a[3] / a[2];
  shear.s.canonicalize();
  RationalModel flat = apply_transformation(moved, shear);
  const auto& b = flat.coefficients();
  if (b[1] != 0 || b[3] != 0 || b[4] != 0) throw InternalError("order 3 point is not a flex");
  return three_torsion_normalize(b[0], b[2], budget);
}

VerdictReport classify_three_torsion(const WeierstrassCurve& e, const FixtureTable* fixtures, const FactorBudget& budget) {
  VerdictReport r = check_divisibility(e, fixtures, budget);
  if (r.incomplete) return r;
  const TorsionStructure& tors = *r.torsion;
  if (tors.n2 % 3 != 0) throw ArgumentError("curve " + e.to_string() + " has no rational point of order 3");
  const RationalPoint p = multiply(e, tors.generators.back(), tors.n2 / 3);

  const Rational j = e.j_invariant();
  const bool special_j = j == 0 || j == 1728;
  if (special_j) r.notes.push_back("j-invariant is " + to_string(j) + "; the classification hypotheses exclude it");

  if (mpz_divisible_ui_p(r.tamagawa_product.get_mpz_t(), 3)) {
    r.classification = Classification::Divisible;
    return r;
  }
  ThreeTorsionNormalForm nf = three_torsion_normal_form(e, p, budget);
  if (nf.b != 1) {
    r.classification = Classification::Unclassified;
    r.notes.push_back("normal form has b = " + to_string(nf.b) + " although 3 does not divide c(E)");
    return r;
  }
  r.isogeny = hadano_quotient(nf, budget);
  if (r.isogeny->ord3_ratio_total() >= 2) {
    r.classification = Classification::RatioImpliesSha;
    return r;
  }

  const LocalDatum at3 = tate(e, 3);
  const auto family = at3.kodaira.family();
  if (family == KodairaType::Family::II || family == KodairaType::Family::IV) {
    r.classification = Classification::ExceptionB;
    return r;
  }

  int split_places = 0;
  bool semistable_away = true;
  for (const auto& d : r.local) {
    if (d.reduction == ReductionClass::Split) ++split_places;
    if (d.prime != 3 && d.reduction == ReductionClass::Additive) semistable_away = false;
  }
  if (!semistable_away || split_places > 1) {
    r.classification = Classification::Unclassified;
    r.notes.push_back("3 does not divide c(E) but no exception family applies");
    return r;
  }

  std::optional<int> w3;
  if (at3.reduction != ReductionClass::Additive && !special_j) {
    w3 = local_root_number(e, Place::finite(3)).value == RootNumber::Plus ? 1 : -1;
  } else if (fixtures != nullptr) {
    if (const FixtureCurve* f = fixtures->find(r.key); f != nullptr && f->w3) {
      w3 = f->w3;
      r.notes.push_back("w3 taken from fixture " + f->label);
    }
  }
  if (!w3) {
    r.classification = Classification::ExceptionACandidate;
    r.notes.push_back("w3 unknown at additive reduction of type " + at3.kodaira.to_string());
  } else if (*w3 == 1) {
    r.classification = Classification::ExceptionA;
  } else {
    r.classification = Classification::Unclassified;
    r.notes.push_back("w3 = -1 with isogeny ratio below 2");
  }
  return r;
}

}  // namespace tamagawa
