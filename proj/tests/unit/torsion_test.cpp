#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tamagawa/torsion.hpp"

using namespace tamagawa;

namespace {

WeierstrassCurve curve(std::array<long, 5> a) { return WeierstrassCurve(a[0], a[1], a[2], a[3], a[4]); }

RationalPoint pt(long x, long y) { return RationalPoint::affine(Rational(x), Rational(y)); }

// Every element generated by the reported generators, counted.
std::size_t span_size(const WeierstrassCurve& e, const TorsionStructure& t) {
  std::vector<RationalPoint> elems{RationalPoint::at_infinity()};
  for (const auto& g : t.generators) {
    std::vector<RationalPoint> next;
    for (const auto& base : elems) {
      RationalPoint q = base;
      for (int k = 0; k < 12; ++k) {
        if (std::find(next.begin(), next.end(), q) == next.end()) next.push_back(q);
        q = group_law_add(e, q, g);
      }
    }
    elems = next;
  }
  return elems.size();
}

}  // namespace

TEST(GroupLaw, SmallCases) {
  const WeierstrassCurve e = curve({0, -1, 1, -10, -20});
  const RationalPoint p = pt(5, 5);
  ASSERT_TRUE(on_curve(e, p));
  EXPECT_EQ(point_order(e, p), 5);
  EXPECT_EQ(multiply(e, p, 5), RationalPoint::at_infinity());
  EXPECT_EQ(group_law_add(e, p, negate(e, p)), RationalPoint::at_infinity());
  EXPECT_EQ(multiply(e, p, -1), negate(e, p));
  EXPECT_THROW(group_law_add(e, p, pt(0, 0)), ArgumentError);
  // 37a1: (0,0) has infinite order
  EXPECT_EQ(point_order(curve({0, 0, 1, -1, 0}), pt(0, 0)), std::nullopt);
}

TEST(GroupLaw, Associativity) {
  // 37a1 has rank one; use multiples of (0,0)
  const WeierstrassCurve e = curve({0, 0, 1, -1, 0});
  const RationalPoint g = pt(0, 0);
  std::vector<RationalPoint> pts;
  for (int k = -3; k <= 4; ++k) pts.push_back(multiply(e, g, k));
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      EXPECT_EQ(group_law_add(e, a, b), group_law_add(e, b, a));
      for (const auto& c : pts) {
        EXPECT_EQ(group_law_add(e, group_law_add(e, a, b), c), group_law_add(e, a, group_law_add(e, b, c)));
      }
    }
  }
}

TEST(PointCount, AgreesWithBruteForce) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    std::array<Integer, 5> a;
    for (auto& x : a) x = static_cast<long>(rng() % 41) - 20;
    if (oracle::invariants(a).disc == 0) continue;
    const WeierstrassCurve e(a);
    for (unsigned long p : {3UL, 5UL, 7UL, 11UL, 13UL, 101UL}) {
      if (oracle::invariants(a).disc % p == 0) continue;
      EXPECT_EQ(count_points(e, p), oracle::count_all(a, static_cast<long>(p))) << e.to_string() << " mod " << p;
    }
  }
}

TEST(Torsion, KnownStructures) {
  EXPECT_EQ(torsion_subgroup(curve({0, -1, 1, -10, -20})).shape(), "Z/5");
  EXPECT_EQ(torsion_subgroup(curve({0, 0, 1, -1, 0})).shape(), "Z/1");
  EXPECT_EQ(torsion_subgroup(curve({1, 0, 1, -19, 26})).shape(), "Z/2xZ/6");
  EXPECT_EQ(torsion_subgroup(curve({1, -1, 1, -3, 3})).shape(), "Z/7");
  EXPECT_EQ(torsion_subgroup(curve({0, 0, 0, -1, 0})).shape(), "Z/2xZ/2");
  EXPECT_EQ(torsion_subgroup(curve({1, 1, 1, -10, -10})).shape(), "Z/2xZ/4");
  EXPECT_EQ(torsion_subgroup(curve({0, 0, 0, 0, 1})).shape(), "Z/6");
  // Z/8: 15a4
  EXPECT_EQ(torsion_subgroup(curve({1, 1, 1, 35, -28})).shape(), "Z/8");
}

TEST(Torsion, GeneratorsCertified) {
  for (auto a : std::vector<std::array<long, 5>>{{0, -1, 1, -10, -20}, {1, 0, 1, -19, 26}, {1, 1, 1, -10, -10}, {1, 1, 1, 35, -28}}) {
    const WeierstrassCurve e = curve(a);
    const TorsionStructure t = torsion_subgroup(e);
    ASSERT_EQ(t.generators.size(), t.n1 == 1 ? 1u : 2u);
    if (t.n1 == 2) EXPECT_EQ(point_order(e, t.generators.front()), 2);
    EXPECT_EQ(point_order(e, t.generators.back()), t.n2);
    EXPECT_EQ(span_size(e, t), static_cast<std::size_t>(t.order()));
  }
}

TEST(Torsion, NonMinimalModelsPullBack) {
  const WeierstrassCurve e = curve({1, 0, 1, -19, 26});
  Transformation t{Rational(1, 6), Rational(5), Rational(-2), Rational(7)};
  const WeierstrassCurve big = *apply_transformation(e, t).to_integral();
  const TorsionStructure ts = torsion_subgroup(big);
  EXPECT_EQ(ts.shape(), "Z/2xZ/6");
  for (const auto& g : ts.generators) EXPECT_TRUE(on_curve(big, g));
  EXPECT_EQ(span_size(big, ts), 12u);
}

TEST(Torsion, AgreesWithNagellLutzOracle) {
  std::mt19937_64 rng(29);
  int checked = 0;
  while (checked < 40) {
    std::array<Integer, 5> a;
    for (auto& x : a) x = static_cast<long>(rng() % 7) - 3;
    if (oracle::invariants(a).disc == 0) continue;
    const WeierstrassCurve e(a);
    const WeierstrassCurve m = minimal_model(e).curve;
    const auto want = oracle::naive_torsion(m.c4(), m.c6());
    const TorsionStructure got = torsion_subgroup(e);
    EXPECT_EQ(got.order(), want.order) << e.to_string();
    EXPECT_EQ(got.n1 == 2 ? 4 : (got.n2 % 2 == 0 ? 2 : 1), want.two_torsion) << e.to_string();
    ++checked;
  }
}

TEST(Torsion, BoundDividesReductions) {
  const WeierstrassCurve e = curve({0, -1, 1, -10, -20});
  EXPECT_EQ(torsion_bound(e) % 5, 0);
}

TEST(Mazur, ShapesParse) {
  EXPECT_EQ(parse_torsion_shape("Z/12"), std::make_pair(1, 12));
  EXPECT_EQ(parse_torsion_shape("Z/2xZ/8"), std::make_pair(2, 8));
  EXPECT_THROW(parse_torsion_shape("Z/11"), ArgumentError);
  EXPECT_THROW(parse_torsion_shape("Z/2xZ/10"), ArgumentError);
  EXPECT_THROW(parse_torsion_shape("Z3"), ArgumentError);
  int count = 0;
  for (int n1 = 1; n1 <= 12; ++n1) {
    for (int n2 = 1; n2 <= 16; ++n2) count += in_mazur_list(n1, n2) && (n2 % n1 == 0);
  }
  EXPECT_EQ(count, 15);
}
