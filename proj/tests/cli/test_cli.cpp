#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "kreinlab_cli/commands.hpp"
#include "kreinlab_cli/matrix_io.hpp"

namespace kreinlab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;

  json report() const { return json::parse(out); }
  json error() const { return json::parse(err); }
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kreinlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("j.json", R"({"rows":2,"cols":2,"entries":[[1,0],[0,0],[0,0],[-1,0]]})");
    write("j4.json", R"({"rows":4,"cols":4,"entries":[1,0,0,0, 0,-1,0,0, 0,0,1,0, 0,0,0,-1]})");
    write("e1.csv", "1\n0\n");
    write("neutral.csv", "1\n1\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) {
    fs::create_directories((dir_ / name).parent_path());
    std::ofstream(dir_ / name) << text;
  }

  Outcome run_cli(std::vector<std::string> args, Environment env = {}) {
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = run(args, out, err, env);
    o.out = out.str();
    o.err = err.str();
    return o;
  }

  fs::path dir_;
};

TEST_F(Cli, ClassifyPositiveLine) {
  const Outcome o = run_cli({"classify", path("j.json"), path("e1.csv")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json r = o.report();
  EXPECT_EQ(r["command"], "classify");
  EXPECT_EQ(r["results"]["classification"]["kind"], "positive");
  EXPECT_EQ(r["results"]["classification"]["regularity_margin"], 1.0);
  EXPECT_EQ(r["tolerance"]["source"], "default");
  EXPECT_TRUE(r["seed"].is_null());
}

TEST_F(Cli, ClassifyNeutralLine) {
  const Outcome o = run_cli({"classify", path("j.json"), path("neutral.csv")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(o.report()["results"]["classification"]["kind"], "neutral");
  EXPECT_EQ(o.report()["flags"]["regular"], false);
}

TEST_F(Cli, ReportKeysInFixedOrder) {
  // nlohmann::json sorts keys on parse, so check the raw text.
  const std::string text = run_cli({"classify", path("j.json"), path("e1.csv")}).out;
  std::size_t last = 0;
  for (const char* key : {"\"command\"", "\"version\"", "\"inputs_digest\"", "\"tolerance\"", "\"seed\"",
                          "\"results\"", "\"flags\""}) {
    const std::size_t at = text.find(key);
    ASSERT_NE(at, std::string::npos) << key;
    EXPECT_GT(at, last) << key;
    last = at;
  }
}

TEST_F(Cli, OutputIsByteIdentical) {
  const std::vector<std::string> args = {"project", path("j.json"), path("neutral.csv"), "--mode", "normal"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  const std::vector<std::string> scen = {"scenario", "zero_angle", "--sizes", "2,4"};
  EXPECT_EQ(run_cli(scen).out, run_cli(scen).out);
}

TEST_F(Cli, MalformedJsonIsUsageError) {
  write("bad.json", R"({"rows":2,"cols":2,"entries":[[1,0]})");
  const Outcome o = run_cli({"classify", path("bad.json"), path("e1.csv")});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_EQ(o.error()["exit_code"], 2);
  EXPECT_TRUE(o.out.empty());
}

TEST_F(Cli, EntryCountMismatchIsUsageError) {
  write("short.json", R"({"rows":2,"cols":2,"entries":[[1,0],[0,0],[0,0]]})");
  EXPECT_EQ(run_cli({"classify", path("short.json"), path("e1.csv")}).code, kExitUsage);
}

TEST_F(Cli, NonInvolutionIsStructureError) {
  write("badj.json", R"({"rows":2,"cols":2,"entries":[2,0,0,-1]})");
  const Outcome o = run_cli({"classify", path("badj.json"), path("e1.csv")});
  EXPECT_EQ(o.code, kExitStructure);
  EXPECT_EQ(o.error()["error"]["kind"], "InvalidSymmetry");
  EXPECT_EQ(o.error()["error"]["category"], "structure");
}

TEST_F(Cli, DimensionMismatchIsStructureError) {
  write("e3.csv", "1\n0\n0\n");
  EXPECT_EQ(run_cli({"classify", path("j.json"), path("e3.csv")}).code, kExitStructure);
}

TEST_F(Cli, ProjectSelfadjoint) {
  const Outcome o = run_cli({"project", path("j.json"), path("e1.csv"), "--mode", "selfadjoint"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json m = o.report()["results"]["matrix"];
  EXPECT_EQ(m["entries"][0][0], 1.0);
  EXPECT_EQ(m["entries"][3][0], 0.0);
  EXPECT_EQ(o.report()["flags"]["j_selfadjoint"], true);
}

TEST_F(Cli, ProjectNormalOntoNeutralLine) {
  const Outcome o = run_cli({"project", path("j.json"), path("neutral.csv"), "--mode", "normal"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json r = o.report();
  for (const json& e : r["results"]["matrix"]["entries"]) {
    EXPECT_NEAR(e[0].get<double>(), 0.5, 1e-15);
    EXPECT_EQ(e[1].get<double>(), 0.0);
  }
  EXPECT_EQ(r["flags"]["normal"], true);
  EXPECT_EQ(r["flags"]["j_selfadjoint"], false);
}

TEST_F(Cli, ProjectSelfadjointOntoNeutralLineFails) {
  const Outcome o = run_cli({"project", path("j.json"), path("neutral.csv"), "--mode", "selfadjoint"});
  EXPECT_EQ(o.code, kExitPrecondition);
  EXPECT_EQ(o.error()["error"]["kind"], "NotRegular");
  EXPECT_FALSE(o.error()["error"]["violated"].get<std::string>().empty());
}

TEST_F(Cli, ProjectObliqueNeedsKernel) {
  write("e2.csv", "0\n1\n");
  const Outcome ok = run_cli({"project", path("j.json"), path("neutral.csv"), "--mode", "oblique", "--kernel",
                              path("e2.csv")});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_EQ(run_cli({"project", path("j.json"), path("neutral.csv"), "--mode", "oblique"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"project", path("j.json"), path("neutral.csv"), "--mode", "oblique", "--kernel",
                     path("neutral.csv")})
                .code,
            kExitPrecondition);
}

TEST_F(Cli, StrictBasisRejectsUnnormalizedColumns) {
  EXPECT_EQ(run_cli({"--strict-basis", "classify", path("j.json"), path("neutral.csv")}).code, kExitStructure);
  EXPECT_EQ(run_cli({"--strict-basis", "classify", path("j.json"), path("e1.csv")}).code, kExitOk);
}

TEST_F(Cli, ToleranceFromEnvironmentAndFlag) {
  Environment env;
  env.tol = "1e-8";
  json r = run_cli({"classify", path("j.json"), path("e1.csv")}, env).report();
  EXPECT_EQ(r["tolerance"]["source"], "env");
  EXPECT_EQ(r["tolerance"]["relative_eps"], 1e-8);
  r = run_cli({"--tol", "1e-6", "classify", path("j.json"), path("e1.csv")}, env).report();
  EXPECT_EQ(r["tolerance"]["source"], "flag");
  EXPECT_EQ(r["tolerance"]["relative_eps"], 1e-6);
  env.tol = "abc";
  EXPECT_EQ(run_cli({"list"}, env).code, kExitUsage);
  EXPECT_EQ(run_cli({"--tol", "-1", "list"}).code, kExitUsage);
}

TEST_F(Cli, DigestDependsOnInputs) {
  const std::string a = run_cli({"classify", path("j.json"), path("e1.csv")}).report()["inputs_digest"];
  const std::string b = run_cli({"classify", path("j.json"), path("neutral.csv")}).report()["inputs_digest"];
  EXPECT_EQ(a.size(), 64u);
  EXPECT_NE(a, b);
}

TEST_F(Cli, OutputFlagWritesFile) {
  const Outcome o = run_cli({"-o", path("report.json"), "classify", path("j.json"), path("e1.csv")});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(json::parse(read_file(path("report.json")))["command"], "classify");
}

TEST_F(Cli, FamilyCoshBlocks) {
  const double c = std::cosh(1.0);
  const double s = std::sinh(1.0);
  // E = v v^H J for v = (cosh 1, sinh 1) in the second block; E0 = diag(1, 0) in the first.
  write("cosh/E0.json", R"({"rows":4,"cols":4,"entries":[1,0,0,0, 0,0,0,0, 0,0,0,0, 0,0,0,0]})");
  std::ostringstream e1;
  e1 << R"({"rows":4,"cols":4,"entries":[0,0,0,0, 0,0,0,0, 0,0,)" << format_double(c * c) << ","
     << format_double(-c * s) << ", 0,0," << format_double(s * c) << "," << format_double(-s * s) << "]}";
  write("cosh/E1.json", e1.str());
  const Outcome o = run_cli({"family", path("j4.json"), path("cosh"), "--kind", "regular"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json r = o.report();
  EXPECT_NEAR(r["results"]["c"]["value"].get<double>(), std::cosh(2.0), 1e-9);
  EXPECT_GE(r["results"]["c"]["value"].get<double>(), 3.76);
  EXPECT_EQ(r["flags"]["flags_agree"], true);
}

TEST_F(Cli, FamilyDuplicateNormalMemberNamesPair) {
  const std::string q = R"({"rows":4,"cols":4,"entries":[0.5,0.5,0,0, 0.5,0.5,0,0, 0,0,0,0, 0,0,0,0]})";
  write("dup/Q0a.json", q);
  write("dup/Q0b.json", q);
  const Outcome o = run_cli({"family", path("j4.json"), path("dup"), "--kind", "normal"});
  EXPECT_EQ(o.code, kExitPrecondition);
  const json e = o.error()["error"];
  EXPECT_EQ(e["kind"], "ConditionViolated");
  EXPECT_NE(e["violated"].get<std::string>().find("pair 0,1"), std::string::npos);
}

TEST_F(Cli, ScenarioJsonAndCsv) {
  Outcome o = run_cli({"scenario", "toeplitz", "--sizes", "4"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json row = o.report()["results"]["rows"][0];
  EXPECT_EQ(row["size"], 4);
  const json eig = row["arrays"]["eigenvalues"];
  ASSERT_EQ(eig.size(), 4u);
  EXPECT_NEAR(eig[0].get<double>(), 2.0 + 2.0 * std::cos(4.0 * std::numbers::pi / 5.0), 1e-12);

  o = run_cli({"scenario", "zero_angle", "--sizes", "2,4,8", "--out", "csv"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("size,", 0), 0u);
  int rows = 0;
  for (std::string line; std::getline(lines, line);) rows += line.empty() ? 0 : 1;
  EXPECT_EQ(rows, 3);
}

TEST_F(Cli, ScenarioErrors) {
  EXPECT_EQ(run_cli({"scenario", "nope"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"scenario", "toeplitz", "--sizes", "9000"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"scenario", "toeplitz", "--out", "xml"}).code, kExitUsage);
}

TEST_F(Cli, VerifyQuickSuite) {
  Outcome o = run_cli({"verify", "--suite", "lemmas", "--trials", "3", "--seed", "7"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(o.report()["flags"]["all_passed"], true);
  EXPECT_EQ(o.report()["seed"], 7);
  EXPECT_EQ(o.out.find("seconds"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--trials", "0"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"verify", "--suite", "bogus"}).code, kExitUsage);
}

TEST_F(Cli, VerifyWithCoarseToleranceStillPasses) {
  const Outcome o = run_cli({"--tol", "1e-2", "verify", "--suite", "lemmas", "--trials", "10"});
  ASSERT_EQ(o.code, kExitOk) << o.out;
  EXPECT_GT(o.report()["flags"]["borderline_total"].get<int>(), 0);
}

TEST_F(Cli, HelpAndUnknownCommand) {
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run_cli({}).code, kExitUsage);
}

TEST(MatrixIo, ParseComplex) {
  EXPECT_EQ(parse_complex("1.5"), Complex(1.5, 0));
  EXPECT_EQ(parse_complex("-2j"), Complex(0, -2));
  EXPECT_EQ(parse_complex("1e-3+2.5j"), Complex(1e-3, 2.5));
  EXPECT_EQ(parse_complex("3-4j"), Complex(3, -4));
  EXPECT_THROW(parse_complex("1+"), ParseError);
  EXPECT_THROW(parse_complex("abc"), ParseError);
}

TEST(MatrixIo, CsvRoundTrip) {
  const CMatrix m = parse_matrix_csv("# comment\n1, 2+1j\n-0.5j, 3\n");
  ASSERT_EQ(m.rows(), 2);
  ASSERT_EQ(m.cols(), 2);
  EXPECT_EQ(m(0, 1), Complex(2, 1));
  EXPECT_EQ(m(1, 0), Complex(0, -0.5));
  EXPECT_EQ(parse_matrix_csv(matrix_to_csv(m)), m);
  EXPECT_THROW(parse_matrix_csv("1,2\n3\n"), ParseError);
}

TEST(MatrixIo, JsonRoundTrip) {
  CMatrix m(2, 1);
  m << Complex(0.1, -0.2), Complex(-0.0, 3);
  const CMatrix back = parse_matrix_json(matrix_to_json(m).dump());
  EXPECT_EQ(back, m);
  EXPECT_THROW(parse_matrix_json(R"({"rows":-1,"cols":1,"entries":[]})"), ParseError);
  EXPECT_THROW(parse_matrix_json(R"({"rows":1,"cols":1,"entries":["x"]})"), ParseError);
}

}  // namespace
}  // namespace kreinlab::cli
