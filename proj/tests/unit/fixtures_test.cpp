#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "tamagawa/fixtures.hpp"

using namespace tamagawa;

namespace {

FixtureTable bundled() { return load_fixtures(TAMAGAWA_TEST_FIXTURES); }

std::string conductor_of_label(const std::string& label) {
  return label.substr(0, label.find_first_not_of("0123456789"));
}

std::string isogeny_class(const std::string& label) { return label.substr(0, label.find_last_not_of("0123456789") + 1); }

}  // namespace

TEST(Fixtures, BundledFileLoads) {
  FixtureTable t = bundled();
  EXPECT_GE(t.size(), 20u);
  const FixtureCurve* f = t.find_label("19a1");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(*f->torsion, "Z/3");
  EXPECT_EQ(t.find(WeierstrassCurve(0, 1, 1, -9, -15)), f);
  EXPECT_EQ(t.find_label("11a2")->optimal, false);
}

TEST(Fixtures, EveryNamedExceptionPresent) {
  FixtureTable t = bundled();
  for (std::string label : {"11a3", "14a4", "14a6", "15a3", "15a7", "15a8", "17a2", "17a4", "20a2", "21a4", "24a4",
                            "32a2", "39a4", "55a4", "48a4", "27a3", "27a4", "54a3", "19a1", "19a3", "37b1", "37b3",
                            "30a2", "90c6"}) {
    EXPECT_NE(t.find_label(label), nullptr) << label;
  }
}

TEST(Fixtures, ConductorMatchesLabel) {
  const FixtureTable t = bundled();
  for (const auto& rec : t.records()) {
    ASSERT_TRUE(rec.conductor.has_value()) << rec.label;
    EXPECT_EQ(to_string(*rec.conductor), conductor_of_label(rec.label));
  }
}

// Transcription check that does not involve Tate's algorithm: curves
// in one isogeny class have the same number of points mod every good p.
TEST(Fixtures, IsogenyClassesSharePointCounts) {
  std::map<std::string, std::vector<const FixtureCurve*>> classes;
  FixtureTable t = bundled();
  for (const auto& rec : t.records()) classes[isogeny_class(rec.label)].push_back(&rec);
  for (const auto& [name, members] : classes) {
    for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L}) {
      const Integer N = *members.front()->conductor;
      if (N % p == 0) continue;
      const long want = oracle::count_all(members.front()->ai, p);
      for (const auto* m : members) EXPECT_EQ(oracle::count_all(m->ai, p), want) << m->label << " mod " << p;
    }
  }
}

// Bad primes of the transcribed models against the point-count oracle.
TEST(Fixtures, MultiplicativeDataAgreesWithPointCounts) {
  const FixtureTable t = bundled();
  for (const auto& rec : t.records()) {
    for (const auto& l : rec.local) {
      const long p = l.prime.get_si();
      const std::string cls = oracle::reduction_class(rec.ai, p);
      const long vd = oracle::valuation(oracle::invariants(rec.ai).disc, p);
      if (cls == "split") {
        EXPECT_EQ(l.kodaira, "I" + std::to_string(vd)) << rec.label;
        EXPECT_EQ(l.tamagawa, vd) << rec.label;
      } else if (cls == "nonsplit") {
        EXPECT_EQ(l.kodaira, "I" + std::to_string(vd)) << rec.label;
        EXPECT_EQ(l.tamagawa, vd % 2 == 0 ? 2 : 1) << rec.label;
      } else {
        EXPECT_EQ(cls, "additive") << rec.label;
      }
    }
  }
}

TEST(Fixtures, ConcordanceWithRecomputation) {
  const FixtureTable t = bundled();
  for (const auto& rec : t.records()) {
    auto mismatches = fixture_mismatches(rec);
    EXPECT_TRUE(mismatches.empty()) << mismatches.front();
  }
}

TEST(Fixtures, EmptyFileGivesEmptyTable) {
  EXPECT_TRUE(parse_fixtures("").empty());
  EXPECT_TRUE(parse_fixtures("  \n").empty());
  EXPECT_TRUE(parse_fixtures("[]").empty());
}

TEST(Fixtures, ValidationErrorsNameTheRecord) {
  auto error_of = [](const std::string& text) {
    try {
      parse_fixtures(text);
    } catch (const FixtureError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  EXPECT_NE(error_of(R"([{"label":"bad11","ai":[0,-1,1,-10,-20],"torsion":"Z/11"}])").find("bad11"), std::string::npos);
  EXPECT_NE(error_of(R"([{"label":"wrongtors","ai":[0,-1,1,-10,-20],"torsion":"Z/3"}])").find("wrongtors"), std::string::npos);
  EXPECT_NE(error_of(R"([{"label":"sing","ai":[0,0,0,0,0]}])").find("sing"), std::string::npos);
  EXPECT_NE(error_of(R"([{"label":"short","ai":[0,1]}])").find("short"), std::string::npos);
  EXPECT_NE(error_of(R"([{"label":"cp","ai":[0,-1,1,-10,-20],"local":[{"p":11,"kodaira":"I5","cp":7}]}])").find("cp"),
            std::string::npos);
  EXPECT_NE(error_of(R"([{"label":"prod","ai":[0,-1,1,-10,-20],"tamagawa_product":4,"local":[{"p":11,"kodaira":"I5","cp":5}]}])")
                .find("prod"),
            std::string::npos);
  EXPECT_NE(error_of(R"([{"label":"a","ai":[0,-1,1,-10,-20]},{"label":"b","ai":[0,0,0,-13392,-1080432]}])").find("same curve"),
            std::string::npos);
  EXPECT_NE(error_of(R"([{"label":"a","ai":[0,-1,1,-10,-20]},{"label":"a","ai":[0,-1,1,0,0]}])").find("duplicate"),
            std::string::npos);
  EXPECT_NE(error_of("{not json").find("JSON"), std::string::npos);
  EXPECT_EQ(error_of(R"([{"label":"ok","ai":["0","-1","1","-10","-20"],"torsion":"Z/5","sha":1}])"), "accepted");
}

TEST(Fixtures, MismatchesAreReported) {
  FixtureTable t = parse_fixtures(R"([{"label":"11a1","ai":[0,-1,1,-10,-20],"conductor":33,"c_inf":2,
    "local":[{"p":11,"kodaira":"I5","cp":1}]}])");
  auto m = fixture_mismatches(t.records().front());
  EXPECT_EQ(m.size(), 3u);
}
