// Copyright 2026 The ripforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "ripforge/ripforge.hpp"

namespace ripforge {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  nlohmann::json report;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  Run r{code, nullptr, out.str(), err.str()};
  const auto nl = r.out.find('\n');
  if (nl != std::string::npos && nl + 1 == r.out.size() && !r.out.empty() && r.out[0] == '{') {
    r.report = nlohmann::json::parse(r.out);
  }
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ripforge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, ConstructGolomb) {
  const auto r = run_cli({"construct", "golomb", "--p", "5", "-o", path("a.cmx")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report["rows"], 121);
  EXPECT_EQ(r.report["cols"], 5);
  const Matrix A = read_cmx(fs::path(path("a.cmx")));
  EXPECT_EQ(A.rows(), 121u);
  EXPECT_TRUE(A.same_entries(golomb_phase(5)));
}

TEST_F(CliTest, CondFailureReportsWitness) {
  std::vector<cplx> e(100 * 3);
  for (std::size_t j = 0; j < 100; ++j) {
    const double s = j % 3 == 0 ? 1.0 : -1.0;
    e[j * 3] = s;
    e[j * 3 + 1] = s;
    e[j * 3 + 2] = j % 2 == 0 ? 1.0 : -1.0;
  }
  write_cmx(Matrix(Field::kReal, 100, 3, e), fs::path(path("dup.cmx")));
  const auto r = run_cli({"certify", "cond", path("dup.cmx"), "--kappa", "auto"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report["cond_a_pass"], false);
  EXPECT_EQ(r.report["pair_witness"], nlohmann::json::array({0, 1}));
  EXPECT_EQ(r.report["max_pair_sum"], 100);
}

TEST_F(CliTest, CondPassOnLasVegasOutput) {
  ASSERT_EQ(run_cli({"construct", "lasvegas", "--m", "64", "--n", "16", "--seed", "3", "-o", path("lv.cmx")}).code, 0);
  const auto r = run_cli({"certify", "cond", path("lv.cmx"), "--kappa", "auto", "--s", "1", "--delta", "0.9"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.report["cond_b_pass"], true);
}

TEST_F(CliTest, CondRejectsNonSign) {
  ASSERT_EQ(run_cli({"construct", "weil", "--p", "3", "--d", "1", "-o", path("w.cmx")}).code, 0);
  const auto r = run_cli({"certify", "cond", path("w.cmx")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report["error"], "NotSignMatrix");
}

TEST_F(CliTest, DesignDelta) {
  const auto r = run_cli({"design", "delta", "--n", "3", "--k", "2", "--field", "complex"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.report["delta"].get<double>(), 1.0 / 6.0, 1e-15);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"construct", "golomb"}).code, 2);
  EXPECT_EQ(run_cli({"construct", "golomb", "--p", "x", "-o", path("a.cmx")}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  const auto bad = run_cli({"construct", "golomb", "--p", "4", "-o", path("a.cmx")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.report["error"], "InvalidModulus");
  EXPECT_FALSE(bad.err.empty());
  EXPECT_EQ(run_cli({"certify", "coherence", path("missing.cmx")}).code, 2);
  EXPECT_EQ(run_cli({"design", "chain", "--direction", "1to2", "--eps", "0.6", "--n", "3", "--k", "2", "--field", "real"})
                .report["error"],
            "EpsilonOutOfRange");
}

TEST_F(CliTest, HelpOnEverySubcommand) {
  const std::vector<std::vector<std::string>> paths = {
      {"construct", "golomb"}, {"construct", "golomb-stacked"}, {"construct", "weil"},     {"construct", "alltop"},
      {"construct", "devore"}, {"construct", "rademacher"},     {"construct", "lasvegas"}, {"construct", "composed"},
      {"certify", "coherence"}, {"certify", "cond"},            {"certify", "ric"},        {"probe"},
      {"verify", "identities"}, {"verify", "isometry"},         {"verify", "embedding"},   {"design", "delta"},
      {"design", "defect"},     {"design", "from-matrix"},      {"design", "chain"},       {"recover"}};
  for (auto args : paths) {
    args.push_back("--help");
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, 0) << args[0];
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << args[0];
  }
}

TEST_F(CliTest, ComposedWithoutOverrideFailsFast) {
  const auto r = run_cli({"construct", "composed", "--s", "1", "--n", "20", "-o", path("c.cmx")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.report["message"].get<std::string>().find("override"), std::string::npos);
  EXPECT_EQ(run_cli({"construct", "composed", "--s", "1", "--n", "20", "--p", "3", "-o", path("c.cmx")}).code, 0);
}

TEST_F(CliTest, VerifyCommands) {
  ASSERT_EQ(run_cli({"construct", "golomb-stacked", "--p", "5", "-o", path("m.cmx")}).code, 0);
  ASSERT_EQ(run_cli({"construct", "golomb", "--p", "5", "-o", path("a.cmx")}).code, 0);
  EXPECT_EQ(run_cli({"verify", "isometry", path("m.cmx"), "--seed", "1"}).code, 0);
  EXPECT_EQ(run_cli({"verify", "embedding", path("a.cmx")}).code, 0);
  EXPECT_EQ(run_cli({"verify", "identities", path("a.cmx"), "--trials", "5"}).code, 0);
  // A matrix that is not an l4 isometry fails the check.
  EXPECT_EQ(run_cli({"verify", "isometry", path("a.cmx")}).code, 1);
}

TEST_F(CliTest, RicAndProbeAndDesign) {
  ASSERT_EQ(run_cli({"construct", "alltop", "--m", "5", "-o", path("al.cmx")}).code, 0);
  const auto ric = run_cli({"certify", "ric", path("al.cmx"), "--s", "2"});
  EXPECT_EQ(ric.code, 0);
  EXPECT_EQ(ric.report["below_coherence_bound"], true);
  const auto probe = run_cli({"probe", path("al.cmx"), "--s", "2", "--trials", "100", "--seed", "4"});
  EXPECT_EQ(probe.code, 0);
  EXPECT_EQ(probe.report["distortion_is_lower_bound"], true);

  ASSERT_EQ(run_cli({"construct", "golomb-stacked", "--p", "3", "-o", path("m.cmx")}).code, 0);
  const auto fm = run_cli({"design", "from-matrix", path("m.cmx"), "--k", "2", "-o", path("pts.cmx")});
  ASSERT_EQ(fm.code, 0);
  EXPECT_NEAR(fm.report["S"].get<double>(), 6.0, 1e-10);
  const auto defect = run_cli({"design", "defect", path("pts.cmx"), "--k", "2"});
  EXPECT_EQ(defect.code, 0);
  EXPECT_LE(std::abs(defect.report["defect"].get<double>()), 1e-10);
}

TEST_F(CliTest, RecoverOnCertifiedMatrix) {
  ASSERT_EQ(run_cli({"construct", "lasvegas", "--m", "400", "--n", "32", "--seed", "1", "-o", path("lv.cmx")}).code, 0);
  const auto r = run_cli({"recover", path("lv.cmx"), "--s", "2", "--seed", "5"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.report["recovered"], true);
}

TEST_F(CliTest, SeededOutputIsByteIdentical) {
  const std::vector<std::string> a = {"construct", "rademacher", "--m", "20", "--n", "7", "--seed", "9", "-o",
                                      path("r.cmx")};
  const auto first = run_cli(a);
  std::ifstream f1(path("r.cmx"));
  const std::string text1((std::istreambuf_iterator<char>(f1)), {});
  const auto second = run_cli(a);
  std::ifstream f2(path("r.cmx"));
  const std::string text2((std::istreambuf_iterator<char>(f2)), {});
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(text1, text2);

  const std::vector<std::string> p = {"probe", path("r.cmx"), "--s", "2", "--trials", "500", "--seed", "3"};
  EXPECT_EQ(run_cli(p).out, run_cli(p).out);
  const std::vector<std::string> d = {"design", "delta", "--n", "2", "--k", "2", "--field", "real",
                                      "--samples", "20000", "--seed", "1"};
  EXPECT_EQ(run_cli(d).out, run_cli(d).out);
}

TEST_F(CliTest, RoundsExhaustedExitsOne) {
  const auto r = run_cli({"construct", "lasvegas", "--m", "1", "--n", "16", "--seed", "0", "--kappa", "0.01",
                          "--max-rounds", "3", "-o", path("x.cmx")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report["error"], "RoundsExhausted");
  EXPECT_EQ(r.report["rounds"], 3);
}

}  // namespace
}  // namespace ripforge
