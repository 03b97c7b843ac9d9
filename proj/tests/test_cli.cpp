#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "expr_support.hpp"
#include "hfold/cli.hpp"
#include "json.hpp"

using namespace hfold;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(CliGolden, AllCommands) {
  for (const std::string& msg : hfold::testing::check_cli_golden()) ADD_FAILURE() << msg;
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(run({"repro", "--all"}).code, kExitOk);
  const CliRun m = run({"maximal", "--multiples", "4"});
  EXPECT_EQ(m.code, kExitFalsified);
  EXPECT_NE(m.out.find("witness b = 2"), std::string::npos);
  EXPECT_EQ(run({"maximal", "--multiples", "7"}).code, kExitOk);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "fin{0"}).code, kExitUsage);
  EXPECT_EQ(run({"family", "classify", "--rule", "N | ray_geq(q) & N0"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "--help"}).code, kExitOk);
  EXPECT_EQ(run({"rset", "theorem6", "--family", "[0, q]", "--h", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"family", "classify", "--rule", "fin{0} | abs_geq(q)", "--limit", "fin{1}"}).code, kExitUsage);
  EXPECT_EQ(run({"nonbasis", "fin{-1} | ap(0, 3)"}).code, kExitOk);
  EXPECT_EQ(run({"nonbasis", "!fin{1}"}).code, kExitFalsified);
}

TEST(CliTest, SpecClassifyExample) {
  const CliRun r = run({"family", "classify", "--rule", "fin{0,1,4}|abs_geq(q)", "--limit", "fin{0,1,4}", "--hmax", "4",
                     "--Q", "50", "--format", "json"});
  const nlohmann::json j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 4u);
  for (const auto& row : j["rows"])
    if (row["h"].get<int>() >= 2) {
      EXPECT_EQ(row["status"], "ProperInclusionCertified");
      EXPECT_TRUE(row["witness"].is_number());
    }
  EXPECT_EQ(j["version"], "1.0");
}

TEST(CliTest, JsonIsDeterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"family", "classify", "--rule", "fin{-1} | ap(0, 3) | ray_geq(q)", "--hmax", "3", "--Q", "30", "--format", "json"},
      {"lattice", "stable-box", "--d", "1", "--w", "40", "--Q", "12", "--h", "3", "--seed", "11", "--format", "json"},
      {"rset", "theorem6", "--family", "[0, 1 + 1/q] | [3, 4]", "--h", "2", "--Q", "8", "--format", "json"},
  };
  for (const auto& c : commands) EXPECT_EQ(run(c).out, run(c).out);
  const auto seeded = [](const char* seed) {
    return run({"lattice", "stable-box", "--d", "2", "--w", "8", "--Q", "8", "--trials", "2", "--seed", seed,
                "--format", "json"})
        .out;
  };
  EXPECT_NE(seeded("1"), seeded("2"));
}

TEST(CliTest, EnvironmentDefaults) {
  ::setenv("HFOLD_DEFAULT_Q", "7", 1);
  const CliRun r = run({"rset", "theorem8", "--family", "[0, 1 + 1/q] | [3, 4]", "--h", "2", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["rows"].size(), 7u);
  ::setenv("HFOLD_DEFAULT_Q", "seven", 1);
  EXPECT_EQ(run({"repro", "--all"}).code, kExitUsage);
  ::unsetenv("HFOLD_DEFAULT_Q");
  ::setenv("HFOLD_DEFAULT_WINDOW", "49", 1);
  EXPECT_EQ(run({"family", "classify", "--rule", "fin{0,1,4}|abs_geq(q)", "--Q", "50"}).code, kExitFalsified);
  ::setenv("HFOLD_DEFAULT_WINDOW", "50", 1);
  EXPECT_EQ(run({"family", "classify", "--rule", "fin{0,1,4}|abs_geq(q)", "--Q", "50"}).code, kExitUsage);
  ::unsetenv("HFOLD_DEFAULT_WINDOW");
}

TEST(CliTest, FormatsAgree) {
  const std::vector<std::string> base = {"family", "classify", "--rule", "fin{0,1,4}|abs_geq(q)", "--hmax", "3",
                                         "--Q", "20", "--format"};
  auto with = [&](const char* f) {
    auto a = base;
    a.push_back(f);
    return run(a).out;
  };
  const std::string csv = with("csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "h,status,certificate,witness,evidence");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_NE(with("md").find("| 2 | ProperInclusionCertified | sharp | -1 |"), std::string::npos);
}
