#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "tamagawa/scan.hpp"

using namespace tamagawa;

namespace {

WeierstrassCurve curve(std::array<long, 5> a) { return WeierstrassCurve(a[0], a[1], a[2], a[3], a[4]); }

const FixtureTable& fixtures() {
  static const FixtureTable t = load_fixtures(TAMAGAWA_TEST_FIXTURES);
  return t;
}

std::multiset<std::string> labels(const ScanResult& r, const std::string& kind) {
  std::multiset<std::string> out;
  for (const auto& f : r.findings) {
    if (f.kind == kind) out.insert(f.report.fixture_label.value_or("unmatched"));
  }
  return out;
}

ScanOptions with_fixtures() {
  ScanOptions o;
  o.fixtures = &fixtures();
  return o;
}

}  // namespace

TEST(CheckDivisibility, TwoSixAtTwo) {
  VerdictReport r = check_divisibility(two_six_curve(2), &fixtures());
  EXPECT_TRUE(r.divisible);
  EXPECT_EQ(r.tamagawa_product % 12, 0);
  EXPECT_EQ(r.torsion->shape(), "Z/2xZ/6");
  EXPECT_FALSE(r.sha.has_value());
}

TEST(CheckDivisibility, FortyEightA4) {
  VerdictReport r = check_divisibility(curve({0, 1, 0, 1, 0}), &fixtures());
  EXPECT_FALSE(r.divisible);
  EXPECT_EQ(r.c_inf * r.tamagawa_product, 1);
  EXPECT_EQ(r.fixture_label, "48a4");
  EXPECT_EQ(r.optimal, false);
  EXPECT_EQ(r.manin, 2);
  EXPECT_EQ(r.sha, 1);
}

TEST(CheckDivisibility, TwentySevenA3) {
  VerdictReport r = check_divisibility(curve({0, 0, 1, 0, 0}), &fixtures());
  EXPECT_FALSE(r.divisible);
  EXPECT_EQ(r.fixture_label, "27a3");
  EXPECT_EQ(r.manin, 3);
}

TEST(CheckDivisibility, FactoredProduct) {
  VerdictReport r = check_divisibility(curve({1, 0, 1, -19, 26}));
  EXPECT_EQ(r.tamagawa_factored.value(), 24);
  EXPECT_FALSE(r.fixture_label.has_value());
}

TEST(CheckDivisibility, BudgetExhaustionFlagged) {
  // Delta has two 19-digit prime factors
  const Integer p("1000000000000000003"), q("1000000000000000009");
  VerdictReport r = check_divisibility(two_torsion_ss_curve(1, p * q), nullptr, FactorBudget{1000, 10});
  EXPECT_TRUE(r.incomplete);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Classify, ExceptionA) {
  VerdictReport r = classify_three_torsion(ThreeTorsionNormalForm::make(2, 1).curve(), &fixtures());
  EXPECT_EQ(r.classification, Classification::ExceptionA);
  EXPECT_EQ(r.fixture_label, "19a3");
  ASSERT_TRUE(r.isogeny.has_value());
  EXPECT_EQ(r.isogeny->ord3_ratio_total(), 1);
}

TEST(Classify, ExceptionB) {
  for (long a : {0L, -3L, -6L}) {
    VerdictReport r = classify_three_torsion(ThreeTorsionNormalForm::make(a, 1).curve(), &fixtures());
    EXPECT_EQ(r.classification, Classification::ExceptionB) << a;
  }
  EXPECT_EQ(classify_three_torsion(curve({1, -1, 0, -3, 3}), &fixtures()).fixture_label, "54a3");
}

TEST(Classify, DivisibleWhenBHasPrimeFactor) {
  VerdictReport r = classify_three_torsion(ThreeTorsionNormalForm::make(1, 5).curve());
  EXPECT_EQ(r.classification, Classification::Divisible);
  EXPECT_EQ(r.tamagawa_product % 3, 0);
}

TEST(Classify, RatioImpliesSha) {
  int found = 0;
  for (long a = -30; a <= 30; ++a) {
    if (a == 3) continue;
    VerdictReport r = classify_three_torsion(ThreeTorsionNormalForm::make(a, 1).curve());
    ASSERT_TRUE(r.classification.has_value());
    EXPECT_NE(r.classification, Classification::Unclassified) << a;
    if (r.classification == Classification::RatioImpliesSha) {
      EXPECT_GE(r.isogeny->ord3_ratio_total(), 2);
      ++found;
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Classify, NeedsThreeTorsion) { EXPECT_THROW(classify_three_torsion(curve({0, -1, 1, -10, -20})), ArgumentError); }

TEST(Scan, FourTorsionNegativeT) {
  ScanResult r = run_preset("prop2.1-negative-t", with_fixtures());
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.examined, 15u);
  EXPECT_EQ(labels(r, "exception"), (std::multiset<std::string>{"21a4", "24a4"}));
  for (const auto& l : labels(r, "odd-tamagawa")) EXPECT_TRUE(l == "15a7" || l == "15a8" || l == "17a4") << l;
}

TEST(Scan, FourTorsionPrimeDividingS) {
  std::vector<std::pair<Integer, Integer>> params;
  for (long s : {2L, 3L, 5L, 6L}) {
    for (long t = -40; t <= 40; ++t) {
      if (t != 0 && std::gcd(s, t) == 1 && t != -16 * s) params.push_back({s, t});
    }
  }
  ScanResult r = scan_four_torsion(params);
  EXPECT_TRUE(r.findings.empty());
  EXPECT_TRUE(scan_four_torsion({}).findings.empty());
}

TEST(Scan, TwoSixDefaultRange) {
  ScanResult r = run_preset("prop2.2", with_fixtures());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.findings.empty());
  EXPECT_EQ(r.skipped, 5u);  // t = 0, 1, -1, 1/3, -1/3
}

TEST(Scan, TwoTorsionSemistable) {
  ScanResult r = run_preset("prop2.4", with_fixtures());
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(labels(r, "exception"), (std::multiset<std::string>{"15a8", "39a4", "55a4"}));
}

TEST(Scan, WithoutFixturesFindingsAreUnmatched) {
  ScanResult r = run_preset("prop2.4");
  EXPECT_EQ(labels(r, "exception"), (std::multiset<std::string>{"unmatched", "unmatched", "unmatched"}));
  EXPECT_FALSE(r.notes.empty());
}

TEST(Scan, ThreeTorsionPresets) {
  ScanOptions o;
  o.bound = 15;
  for (auto name : {"kozuma", "lemma3.3", "claim3.5", "claim3.7"}) {
    ScanResult r = run_preset(name, o);
    EXPECT_TRUE(r.ok()) << name << ": " << (r.problems.empty() ? "" : r.problems.front());
    EXPECT_GT(r.examined, 0u);
  }
}

TEST(Scan, DeterministicAcrossThreadCounts) {
  ScanOptions one = with_fixtures(), many = with_fixtures();
  one.jobs = 1;
  many.jobs = 8;
  ScanResult a = run_preset("prop2.1-random", one), b = run_preset("prop2.1-random", many);
  ASSERT_EQ(a.findings.size(), b.findings.size());
  for (std::size_t i = 0; i < a.findings.size(); ++i) EXPECT_EQ(a.findings[i].parameters, b.findings[i].parameters);
  EXPECT_EQ(a.examined, b.examined);
}

TEST(Scan, UnknownPreset) { EXPECT_THROW(run_preset("prop9.9"), ArgumentError); }

TEST(Kozuma, Rows) {
  // b = 5: split I3 at 5
  KozumaRow row = kozuma_row(ThreeTorsionNormalForm::make(1, 5), 5);
  EXPECT_EQ(row.alternatives, std::vector<std::string>{"I3"});
  EXPECT_TRUE(row.split);
  EXPECT_EQ(row.tamagawa, 3);
}

// Rank zero forces root number +1: with the real place counted, the
// number of split places is even.
TEST(RootNumber, RankZeroFixturesHaveEvenSplitPlaces) {
  for (const auto& rec : fixtures().records()) {
    if (rec.analytic_rank != 0) continue;
    const WeierstrassCurve e = rec.curve();
    GlobalTamagawa g = global_tamagawa(e);
    bool semistable = true;
    int split = 0;
    for (const auto& d : g.local) {
      semistable = semistable && d.reduction != ReductionClass::Additive;
      split += d.reduction == ReductionClass::Split;
    }
    if (!semistable) continue;
    EXPECT_EQ((split + 1) % 2, 0) << rec.label;
    EXPECT_EQ(global_root_number_semistable(e), 1) << rec.label;
  }
}
