#include <gtest/gtest.h>

#include <sstream>

#include "tamagawa_cli/app.hpp"
#include "tamagawa_cli/report_json.hpp"

using tamagawa::cli::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, std::optional<std::string> env_fixtures = std::nullopt) {
  std::ostringstream out, err;
  tamagawa::cli::Environment env;
  env.fixtures_env = env_fixtures;
  env.default_fixtures = TAMAGAWA_TEST_FIXTURES;
  int code = tamagawa::cli::run(args, out, err, env);
  return {code, out.str(), err.str()};
}

std::vector<Json> lines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(Json::parse(line));
  return out;
}

}  // namespace

TEST(Cli, LocaldataSplitI4) {
  Result r = run({"localdata", "--ai", "1,-3,-3,0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  bool seen = false;
  for (const auto& d : j["local"]) {
    if (d["p"] == "3") {
      EXPECT_EQ(d["kodaira"], "I4");
      EXPECT_EQ(d["cp"], 4);
      EXPECT_EQ(d["class"], "split");
      EXPECT_EQ(d["vdelta"], 4);
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, LocaldataAtOnePrime) {
  Result r = run({"localdata", "--ai", "2,0,1,0,0", "--p", "19"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  ASSERT_EQ(j["local"].size(), 1u);
  EXPECT_EQ(j["local"][0]["kodaira"], "I1");
  EXPECT_EQ(j["local"][0]["cp"], 1);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"localdata", "--ai", "0,0,0,0,0"}).code, 2);
  EXPECT_EQ(run({"localdata", "--ai", "1,2,3"}).code, 2);
  EXPECT_EQ(run({"localdata", "--ai", "1,x,3,4,5"}).code, 2);
  EXPECT_EQ(run({"localdata", "--ai", "0,-1,1,-10,-20", "--p", "12"}).code, 2);
  EXPECT_EQ(run({"localdata"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"dual3", "--a", "3"}).code, 2);
  EXPECT_EQ(run({"dual3", "--a", "1", "--b", "5"}).code, 2);
  EXPECT_EQ(run({"scan", "--preset", "nope"}).code, 2);
  EXPECT_EQ(run({"torsion", "--family", "two-six", "--t", "1/3"}).code, 2);
  EXPECT_EQ(run({"torsion", "--family", "moebius", "--t", "2"}).code, 2);
  EXPECT_EQ(run({"check", "--ai", "0,-1,1,-10,-20", "--fixtures", "/nonexistent.json"}).code, 2);
  Result r = run({"localdata", "--ai", "0,0,0,0,0"});
  EXPECT_NE(r.err.find("singular"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, Dual3) {
  Result r = run({"dual3", "--a", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["quotient"], Json::parse(R"(["8","0","19","0","0"])"));
  EXPECT_EQ(j["split_prime"], "19");
  j = Json::parse(run({"dual3", "--a", "0"}).out);
  EXPECT_TRUE(j["split_prime"].is_null());
  EXPECT_TRUE(j.contains("note"));
}

TEST(Cli, TorsionFamilies) {
  Json j = Json::parse(run({"torsion", "--family", "two-six", "--t", "2"}).out);
  EXPECT_EQ(j["shape"], "Z/2xZ/6");
  EXPECT_EQ(j["order"], 12);
  EXPECT_EQ(j["generators"].size(), 2u);
  j = Json::parse(run({"torsion", "--family", "four-torsion", "--t", "-9"}).out);
  EXPECT_EQ(j["shape"], "Z/4");
  j = Json::parse(run({"torsion", "--family", "three-torsion", "--a", "1", "--b", "5"}).out);
  EXPECT_EQ(j["order"].get<int>() % 3, 0);
  j = Json::parse(run({"torsion", "--family", "two-torsion-ss", "--a", "-3", "--b", "16"}).out);
  EXPECT_EQ(j["shape"], "Z/2");
}

TEST(Cli, CheckMatchesFixture) {
  Result r = run({"check", "--ai", "0,0,1,0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["fixture"], "27a3");
  EXPECT_EQ(j["classification"], "exception-b");
  EXPECT_EQ(j["divisible"], false);
  EXPECT_EQ(j["manin"], 3);
}

TEST(Cli, CheckWithoutFixtureMarksShaUnknown) {
  Result r = run({"check", "--family", "two-six", "--t", "2"}, std::string("/dev/null"));
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["sha"], "unknown");
  EXPECT_EQ(j["fixture"], "unmatched");
  EXPECT_EQ(j["divisible"], true);
}

TEST(Cli, ScanPresets) {
  Result r = run({"scan", "--preset", "prop2.1-negative-t"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto out = lines(r.out);
  ASSERT_FALSE(out.empty());
  EXPECT_EQ(out.back()["by_kind"]["exception"], 2);
  EXPECT_EQ(out.size(), out.back()["findings"].get<std::size_t>() + 1);

  r = run({"scan", "--preset", "prop2.2", "--bound", "30", "--summary"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["findings"], 0);

  r = run({"scan", "--preset", "prop2.4", "--summary", "--jobs", "2"});
  EXPECT_EQ(Json::parse(r.out)["by_kind"]["exception"], 3);
}

TEST(Cli, FixturesCommand) {
  Result r = run({"fixtures", "--summary"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["mismatched"], 0);
  EXPECT_EQ(run({"fixtures"}, std::string("/nonexistent.json")).code, 2);
}

TEST(Cli, OutputIsDeterministic) {
  for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
           {"scan", "--preset", "prop2.1-random"},
           {"check", "--family", "four-torsion", "--s", "3", "--t", "-7"},
           {"localdata", "--ai", "1,0,1,-19,26", "--pretty"}}) {
    Result a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, PrettyKeepsContent) {
  Result plain = run({"localdata", "--ai", "0,-1,1,-10,-20"});
  Result pretty = run({"localdata", "--ai", "0,-1,1,-10,-20", "--pretty"});
  EXPECT_EQ(Json::parse(plain.out), Json::parse(pretty.out));
  EXPECT_NE(plain.out, pretty.out);
}
