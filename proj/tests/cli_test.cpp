#include "cli.hpp"

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace staircase::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("staircase_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"frobnicate"}).code, kUsage);
  const auto bad_flag = call({"lemma-la", "--bogus"});
  EXPECT_EQ(bad_flag.code, kUsage);
  EXPECT_NE(bad_flag.err.find("Usage"), std::string::npos);
  EXPECT_EQ(call({"marginals", "--n", "3", "--a", "1/0"}).code, kUsage);
  EXPECT_EQ(call({"marginals", "--n", "3", "--k", "9"}).code, kUsage);
  EXPECT_EQ(call({"--help"}).code, kOk);
  EXPECT_EQ(call({"--version"}).code, kOk);
}

TEST(Cli, RandomizedCommandsNeedSeed) {
  const auto r = call({"sample", "--n", "3", "--count", "5"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
  const auto a = call({"sample", "--n", "3", "--count", "5", "--seed", "9"});
  const auto b = call({"sample", "--n", "3", "--count", "5", "--seed", "9"});
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SpecCommands) {
  const auto vp = call({"verify-partition", "--n", "1..7", "--grid", "default"});
  EXPECT_EQ(vp.code, kOk);
  const auto t = parse_csv(vp.out);
  EXPECT_EQ(t.rows.size(), 35u);
  EXPECT_EQ(call({"lemma-la", "--r", "1..4", "--m", "1..14"}).code, kOk);
}

TEST(Cli, MarginalsCsv) {
  const auto r = call({"marginals", "--n", "4", "--k", "2", "--check"});
  ASSERT_EQ(r.code, kOk);
  const auto t = parse_csv(r.out);
  const auto row = t.rows.at(0);
  EXPECT_EQ(row[t.column("symbol")], "alpha");
  EXPECT_EQ(row[t.column("closed_form")], "1/20");
  EXPECT_EQ(row[t.column("equal")], "true");
}

TEST(Cli, EnumerateCount) {
  const auto r = call({"enumerate", "--count-only", "--n", "5"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "n,count,expected,equal\n5,720,720,true\n");
  const auto grids = call({"enumerate", "--n", "2"});
  EXPECT_EQ(grids.code, kOk);
}

TEST(Cli, EventsFile) {
  const auto dir = scratch("events");
  std::ofstream(dir / "ev.json") << R"([[2, 1, "a"], [2, 4, "a"]])";
  const auto r = call({"joint", "--n", "5", "--events", (dir / "ev.json").string()});
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("1/180"), std::string::npos);
  std::ofstream(dir / "bad.json") << R"([[2, 1, "q"]])";
  EXPECT_EQ(call({"joint", "--n", "5", "--events", (dir / "bad.json").string()}).code, kUsage);
}

TEST(Cli, ManifestRecordsChecksum) {
  const auto dir = scratch("manifest");
  const auto r = call({"lemma-la", "--r", "1..2", "--m", "1..5", "--out", dir.string()});
  ASSERT_EQ(r.code, kOk);
  const auto csv = slurp(dir / "lemma-la.csv");
  const auto m = nlohmann::json::parse(slurp(dir / "lemma-la.manifest.json"));
  EXPECT_EQ(m.at("command"), "lemma-la");
  EXPECT_EQ(m.at("outputs").at(0).at("sha256"), sha256_hex(csv));
  EXPECT_EQ(m.at("version"), version());
}

TEST(Cli, HelperParsers) {
  EXPECT_EQ(parse_range("3..7").lo, 3);
  EXPECT_EQ(parse_range("3..7").hi, 7);
  EXPECT_EQ(parse_range("4").hi, 4);
  EXPECT_THROW(parse_range("7..3"), std::invalid_argument);
  EXPECT_EQ(parse_int_list("1,3,5"), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(parse_grid("default"), default_params_grid());
  EXPECT_EQ(parse_grid("1:2;1/2:3").size(), 2u);
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const Table t{{"x", "y"}, {{"1", "2"}}};
  EXPECT_EQ(t.csv(), "x,y\n1,2\n");
  EXPECT_EQ(parse_csv(t.csv()).rows, t.rows);
  EXPECT_THROW(parse_csv("x,y\n1\n"), std::invalid_argument);
}

TEST(Cli, ReportFlagsMissingAndCorruptArtifacts) {
  const auto dir = scratch("report");
  ASSERT_EQ(call({"enumerate", "--count-only", "--n", "1..8", "--out", dir.string()}).code, kOk);
  const auto partial = call({"report", "--bundle", dir.string()});
  EXPECT_EQ(partial.code, kCheckFailed);
  EXPECT_NE(partial.out.find("PASS 1 "), std::string::npos);
  EXPECT_NE(partial.out.find("FAIL 2 "), std::string::npos);
  EXPECT_NE(partial.out.find("missing artifact"), std::string::npos);

  {
    std::ofstream f(dir / "enumerate.csv", std::ios::app);
    f << "9,1,1,true\n";
  }
  const auto corrupt = call({"report", "--bundle", dir.string()});
  EXPECT_EQ(corrupt.code, kCheckFailed);
  EXPECT_NE(corrupt.out.find("FAIL 1 enumeration count"), std::string::npos);
  EXPECT_NE(corrupt.out.find("checksum"), std::string::npos);

  EXPECT_EQ(call({"report", "--bundle", (dir / "absent").string()}).code, kUsage);
}

}  // namespace
}  // namespace staircase::cli
