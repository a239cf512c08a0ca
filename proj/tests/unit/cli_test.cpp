// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spp/cli.hpp"
#include "spp/error.hpp"
#include "spp/io.hpp"

namespace {

using spp::ErrorCode;
using spp::io::Json;
namespace fs = std::filesystem;

const std::string kData = SPP_DATA_DIR;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = spp::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Scratch file in the system temp dir, removed with the fixture.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("spp_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

std::optional<ErrorCode> parse_code(const Json& j) {
  try {
    spp::io::parse_problem(j);
  } catch (const spp::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string parse_message(const Json& j) {
  try {
    spp::io::parse_problem(j);
  } catch (const spp::Error& e) {
    return e.what();
  }
  return "";
}

Json wedge_problem() {
  return Json::parse(R"({"n": 2, "A": [[1, -1], [-1, -1]], "b": [0, 0],
                         "objective": {"linear": [0, 1]}, "v": [-1, -0.5]})");
}

TEST(ProblemIo, ParsesFixture) {
  const auto p = spp::io::load_problem(kData + "/wedge.json");
  EXPECT_EQ(p.n, 2u);
  ASSERT_EQ(p.a.rows(), 2u);
  EXPECT_EQ(p.a(0, 0), 1.0);
  EXPECT_EQ(p.a(1, 1), -1.0);
  ASSERT_TRUE(p.linear.has_value());
  EXPECT_EQ((*p.linear)[1], 1.0);
  ASSERT_TRUE(p.v.has_value());
  EXPECT_EQ((*p.v)[1], -0.5);
  EXPECT_FALSE(p.max_affine.has_value());
}

TEST(ProblemIo, RoundTripIsLossless) {
  Json j = wedge_problem();
  j["A"][0][1] = 0.1 + 0.2;  // not representable in 17 significant digits of decimal
  j["b"][1] = 1.0 / 3.0;
  const auto p = spp::io::parse_problem(j);
  const Json dumped = Json::parse(spp::io::to_json(p).dump());
  const auto q = spp::io::parse_problem(dumped);
  EXPECT_EQ(q.a(0, 1), 0.1 + 0.2);
  EXPECT_EQ(q.b[1], 1.0 / 3.0);
  EXPECT_EQ(spp::io::to_json(q), spp::io::to_json(p));

  const auto cp = spp::io::load_problem(kData + "/abs.json");
  const auto cp2 = spp::io::parse_problem(spp::io::to_json(cp));
  ASSERT_TRUE(cp2.max_affine.has_value());
  EXPECT_EQ(cp2.max_affine->pieces().size(), 2u);
  EXPECT_EQ(cp2.t, cp.t);
}

TEST(ProblemIo, BadFieldsNameThePath) {
  Json j = wedge_problem();
  j["A"][1][0] = "x";
  EXPECT_EQ(parse_code(j), ErrorCode::parse_error);
  EXPECT_NE(parse_message(j).find("A[1][0]"), std::string::npos);

  j = wedge_problem();
  j.erase("b");
  EXPECT_NE(parse_message(j).find("b: missing"), std::string::npos);

  j = wedge_problem();
  j["b"] = {0, 0, 0};
  EXPECT_NE(parse_message(j).find("b: expected 2 entries"), std::string::npos);

  j = wedge_problem();
  j["objective"]["max_affine"] = Json::array({{{"a", {1, 0}}, {"c", 0}}});
  EXPECT_NE(parse_message(j).find("exactly one"), std::string::npos);

  j = wedge_problem();
  j["objective"]["max_affine"] = Json::array({{{"a", {1, 0}}}});
  j["objective"].erase("linear");
  EXPECT_NE(parse_message(j).find("objective.max_affine[0].c: missing"), std::string::npos);

  j = wedge_problem();
  j["v"][0] = "nan";
  EXPECT_EQ(parse_code(j), ErrorCode::non_finite);

  j = wedge_problem();
  j["b"][0] = "inf";
  EXPECT_EQ(parse_code(j), ErrorCode::non_finite);
}

TEST_F(CliTest, SolveLpRequiresLinearObjective) {
  const auto path = write("noobj.json", R"({"n": 2, "A": [[1, 0], [0, 1], [-1, -1]], "b": [1, 1, 1]})");
  const Result r = run({"solve-lp", path, "--format", "json"});
  EXPECT_EQ(r.code, spp::cli::kExitError);
  EXPECT_NE(r.err.find("objective.linear"), std::string::npos);
  EXPECT_EQ(r.json()["status"], "error");
  EXPECT_EQ(r.json()["error"]["code"], "parse_error");
}

TEST_F(CliTest, MissingFileIsIoError) {
  const Result r = run({"project", (dir_ / "absent.json").string(), "--point", "0,0"});
  EXPECT_EQ(r.code, spp::cli::kExitError);
  EXPECT_NE(r.err.find("io_error"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, spp::cli::kExitError);
  EXPECT_EQ(run({"frobnicate"}).code, spp::cli::kExitError);
  EXPECT_EQ(run({"solve-lp", kData + "/wedge.json", "--no-such-flag"}).code, spp::cli::kExitError);
  EXPECT_EQ(run({"solve-lp", kData + "/wedge.json", "--format", "xml"}).code, spp::cli::kExitError);
  EXPECT_EQ(run({"solve-lp", kData + "/wedge.json", "--mu", "lots"}).code, spp::cli::kExitError);
  const Result help = run({"--help"});
  EXPECT_EQ(help.code, spp::cli::kExitOk);
  EXPECT_NE(help.out.find("solve-lp"), std::string::npos);
}

TEST(Cli, SolveLpGivenShift) {
  const Result r = run({"solve-lp", kData + "/wedge.json", "--mu", "10", "--format", "json"});
  ASSERT_EQ(r.code, spp::cli::kExitOk) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["status"], "certified");
  EXPECT_NEAR(j["result"]["solution"][0].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(j["result"]["solution"][1].get<double>(), 0.0, 1e-12);
  EXPECT_EQ(j["result"]["u"], Json::parse("[-1.0, -10.5]"));
  EXPECT_EQ(j["result"]["mu_used"], 10.0);
  EXPECT_EQ(j["result"]["v_mode"], "given");
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["tool"]["name"], "spp");
  EXPECT_EQ(j["problem"]["n"], 2);
}

TEST(Cli, SolveLpAutoShift) {
  const Result r = run({"solve-lp", kData + "/orthant3.json", "--mu", "auto", "--format", "json"});
  ASSERT_EQ(r.code, spp::cli::kExitOk) << r.err;
  const Json res = r.json()["result"];
  EXPECT_GT(res["mu_used"].get<double>(), 7.0);
  EXPECT_TRUE(res["mu_auto"].get<bool>());
  const std::vector<double> expect{1.0, 0.0, 0.0};
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(res["solution"][i].get<double>(), expect[i], 1e-12);
}

TEST(Cli, SolveLpDoublingWithoutV) {
  const Result r = run({"solve-lp", kData + "/orthant3.json", "--format", "json"});
  ASSERT_EQ(r.code, spp::cli::kExitOk);
  EXPECT_EQ(r.json()["result"]["v_mode"], "given");

  Json p = Json::parse(std::ifstream(kData + "/wedge.json"));
  p.erase("v");
  const auto path = fs::temp_directory_path() / ("spp_cli_nov_" + std::to_string(::getpid()) + ".json");
  std::ofstream(path) << p.dump();
  const Result d = run({"solve-lp", path.string(), "--format", "json"});
  fs::remove(path);
  ASSERT_EQ(d.code, spp::cli::kExitOk) << d.err;
  EXPECT_EQ(d.json()["result"]["v_mode"], "doubling");
  EXPECT_NEAR(d.json()["result"]["value"].get<double>(), 0.0, 1e-9);
}

TEST(Cli, UncertifiedExitsTwo) {
  // mu = 0 leaves v = (-1, -0.5), whose projection (-0.25, 0.25) is not optimal.
  const Result r = run({"solve-lp", kData + "/wedge.json", "--mu", "0", "--format", "json"});
  EXPECT_EQ(r.code, spp::cli::kExitCertificate);
  EXPECT_EQ(r.json()["status"], "not_certified");
}

TEST(Cli, ByteIdenticalReruns) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"solve-lp", kData + "/wedge.json", "--format", "json"},
        {"sharpness", kData + "/wedge.json", "--samples", "64", "--seed", "3", "--format", "json"},
        {"bench", "--count", "5", "--seed", "11", "--format", "json"}}) {
    const Result a = run(args);
    const Result b = run(args);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, TimingOnlyWhenAsked) {
  const Result plain = run({"solve-lp", kData + "/wedge.json", "--format", "json"});
  EXPECT_FALSE(plain.json().contains("timing_ms"));
  const Result timed = run({"solve-lp", kData + "/wedge.json", "--format", "json", "--timing"});
  EXPECT_TRUE(timed.json().contains("timing_ms"));
}

TEST(Cli, TextOutputHasNoColorOffTty) {
  const Result r = run({"solve-lp", kData + "/wedge.json"});
  ASSERT_EQ(r.code, spp::cli::kExitOk);
  EXPECT_EQ(r.out.rfind("spp solve-lp: CERTIFIED", 0), 0u);
  EXPECT_EQ(r.out.find('\033'), std::string::npos);
}

TEST(Cli, SharpnessDefaultsToNegatedObjective) {
  const Result r = run({"sharpness", kData + "/wedge.json", "--format", "json"});
  ASSERT_EQ(r.code, spp::cli::kExitOk);
  const Json s = r.json()["result"]["sharpness"];
  EXPECT_NEAR(s["alpha_lower"].get<double>(), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(s["alpha_exact"].get<double>(), std::sqrt(0.5), 1e-12);
}

TEST(Cli, BenchMatchesOracles) {
  const Result r = run({"bench", "--n", "3", "--m", "6", "--count", "200", "--seed", "7", "--format", "json"});
  ASSERT_EQ(r.code, spp::cli::kExitOk) << r.out;
  const Json s = r.json()["result"];
  EXPECT_EQ(s["count"], 200);
  EXPECT_EQ(s["matches"], 200);
  EXPECT_EQ(s["failures"], 0);
}

TEST_F(CliTest, GenWritesParseableFiles) {
  const Result r = run({"gen", "--n", "2", "--m", "5", "--count", "3", "--pieces", "2", "--out",
                     (dir_ / "gen").string(), "--format", "json"});
  ASSERT_EQ(r.code, spp::cli::kExitOk) << r.err;
  for (int i = 0; i < 3; ++i) {
    const auto p = spp::io::load_problem((dir_ / "gen" / ("problem_" + std::to_string(i) + ".json")).string());
    EXPECT_EQ(p.n, 2u);
    EXPECT_TRUE(p.max_affine.has_value());
  }
}

TEST_F(CliTest, VerifyAcceptsEveryFreshReport) {
  const std::string ex = kData + "/wedge.json";
  const std::vector<std::vector<std::string>> commands{
      {"project", ex, "--point", "0.3,-2"},
      {"sharpness", ex},
      {"solve-lp", ex, "--mu", "10"},
      {"solve-lp", kData + "/orthant3.json"},
      {"solve-cp", kData + "/abs.json"},
      {"dist-bound", ex, "--from", "0,0", "--to", "1,-2", "--delta", "0.3"},
      {"subtrans", ex, "--samples", "64"},
      {"bench", "--count", "10", "--seed", "5"},
      {"gen", "--count", "4", "--pieces", "3"},
  };
  int k = 0;
  for (auto args : commands) {
    args.insert(args.end(), {"--format", "json"});
    const Result r = run(args);
    ASSERT_EQ(r.code, spp::cli::kExitOk) << args[0] << ": " << r.err;
    const auto path = write("report" + std::to_string(k++) + ".json", r.out);
    const Result v = run({"verify", path, "--format", "json"});
    EXPECT_EQ(v.code, spp::cli::kExitOk) << args[0] << "\n" << v.out << v.err;
    EXPECT_EQ(v.json()["status"], "verified") << args[0];
    EXPECT_EQ(v.json()["result"]["verified_command"], args[0]);
  }
}

TEST_F(CliTest, VerifyRejectsTamperedReports) {
  Json rep = (run({"solve-lp", kData + "/wedge.json", "--mu", "10", "--format", "json"})).json();
  rep["result"]["solution"][0] = 0.5;
  Result v = run({"verify", write("bad_solution.json", rep.dump()), "--format", "json"});
  EXPECT_EQ(v.code, spp::cli::kExitCertificate);
  EXPECT_EQ(v.json()["status"], "rejected");

  rep = run({"bench", "--count", "3", "--format", "json"}).json();
  rep["result"]["matches"] = 2;
  v = run({"verify", write("bad_bench.json", rep.dump()), "--format", "json"});
  EXPECT_EQ(v.code, spp::cli::kExitCertificate);

  rep = run({"sharpness", kData + "/wedge.json", "--format", "json"}).json();
  rep["result"]["sharpness"]["alpha_exact"] = 0.9;
  v = run({"verify", write("bad_sharp.json", rep.dump()), "--format", "json"});
  EXPECT_EQ(v.code, spp::cli::kExitCertificate);

  rep["schema_version"] = 99;
  v = run({"verify", write("bad_schema.json", rep.dump())});
  EXPECT_EQ(v.code, spp::cli::kExitError);
}

}  // namespace
