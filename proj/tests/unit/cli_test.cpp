// Copyright 2026 The freeshift Authors.
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

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace freeshift::cli {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(FREESHIFT_TEST_DATA) + "/" + name; }

TEST(Cli, BetaClosedExample) {
  const auto r = run_cli({"beta", "--p", data("half.json"), "--t", "2", "--closed"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.json()["evaluations"][0]["closed"].get<double>(), 0.5);
  const auto csv = run_cli({"beta", "--p", data("half.json"), "--t", "2", "--format", "csv"});
  EXPECT_EQ(csv.out, "t,closed,limit_n,mc,stderr\n2,0.5,,,\n");
}

TEST(Cli, DistinguishExample) {
  const auto r = run_cli({"distinguish", "--p", data("uniform4.json"), "--q", data("half_eighths.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.json()["summary"].get<std::string>(),
            "entropy equal (ln 4), beta differs at t=2: 0.25 vs 0.3125 → NOT permutation-equivalent");
  const auto same = run_cli({"distinguish", "--p", data("p532.json"), "--q", data("p532.json")});
  ASSERT_EQ(same.code, kExitOk);
  EXPECT_TRUE(same.json()["permutation_equivalent"].get<bool>());
}

TEST(Cli, RecoverExample) {
  const auto r = run_cli({"recover", "--power-sums", "1,0.625", "--m", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.json()["vector"], nlohmann::json::parse("[0.75, 0.25]"));
  const auto file = run_cli({"recover", "--input", data("recover_request.json")});
  EXPECT_EQ(file.out, r.out);
  const auto bad = run_cli({"recover", "--power-sums", "1,0.4", "--m", "2"});
  EXPECT_EQ(bad.code, kExitNumeric);
  EXPECT_NE(bad.err.find("inconsistent power sums"), std::string::npos);
}

TEST(Cli, ValidationErrors) {
  EXPECT_EQ(run_cli({}).code, kExitValidation);
  const auto unknown = run_cli({"beta", "--bogus"});
  EXPECT_EQ(unknown.code, kExitValidation);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"beta", "--p", "/nonexistent.json", "--t", "1"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"beta", "--p", data("half.json"), "--t", "x"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"check-bounds", "--ell", "1"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"end-to-end", "--p", data("p532.json"), "--perm", "1,1,2"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"ball", "--format", "xml"}).code, kExitValidation);
}

TEST(Cli, CapCheckedBeforeEnumeration) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_cli({"ball", "--ell", "3", "--radius", "40"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(1));
}

TEST(Cli, EndToEnd) {
  for (const std::string perm : {"(2 3)", "1,2,3", "3,1,2"}) {
    const auto r = run_cli({"end-to-end", "--p", data("p532.json"), "--perm", perm});
    ASSERT_EQ(r.code, kExitOk) << perm << ": " << r.err;
    const auto j = r.json();
    EXPECT_TRUE(j["all_passed"].get<bool>());
    EXPECT_EQ(j["expected_v_phi"].get<double>(), 1.0);
    EXPECT_TRUE(j["beta_identical"].get<bool>());
    EXPECT_TRUE(j["negative_instance_ok"].get<bool>());
  }
}

TEST(Cli, EverySubcommandRuns) {
  const std::vector<std::vector<std::string>> cases{
      {"ball", "--ell", "2", "--radius", "3"},
      {"enum-wa", "--count", "20"},
      {"enum-wa", "--count", "20", "--complement", "--format", "csv"},
      {"check-bounds", "--ell", "3", "--count", "2000"},
      {"code-stats", "--ell", "1", "--p", data("half.json"), "--code", data("code_adaptive.json")},
      {"code-stats", "--p", data("half.json"), "--code", data("code_swap.json"), "--mc",
       "--samples", "500", "--horizon", "2"},
      {"cocycle-check", "--p", data("p532.json"), "--trials", "50"},
      {"cocycle-check", "--p", data("p532.json"), "--trials", "20", "--automorphism", data("swaps.json")},
      {"weakmix-check", "--p", data("p532.json"), "--pairs", "10"},
      {"beta", "--p", data("p532.json"), "--t", "-1,0.5,2", "--limit", "12"},
      {"restricted-beta", "--p", data("half.json"), "--pattern", data("line_pattern.json")},
      {"restricted-beta", "--p", data("half.json"), "--reading", "literal"},
      {"pressure", "--p", data("p532.json"), "--t", "0,1,2"},
      {"power-sums", "--p", data("p532.json"), "--k", "4"},
  };
  for (const auto& args : cases) {
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, kExitOk) << args[0] << ": " << r.err;
    EXPECT_FALSE(r.out.empty()) << args[0];
  }
}

TEST(Cli, ChecksReportSuccess) {
  const auto cocycle = run_cli({"cocycle-check", "--p", data("p532.json"), "--trials", "100"});
  EXPECT_TRUE(cocycle.json()["passed"].get<bool>());
  EXPECT_LT(cocycle.json()["max_cocycle_defect"].get<double>(), 1e-10);
  const auto weak = run_cli({"weakmix-check", "--p", data("p532.json"), "--ell", "3", "--outer", "3",
                             "--pairs", "20"});
  EXPECT_EQ(weak.json()["equal"].get<int>(), 20);
  const auto bounds = run_cli({"check-bounds", "--ell", "2", "--count", "10000"});
  EXPECT_EQ(bounds.code, kExitOk);
  const auto sums = run_cli({"power-sums", "--p", data("p532.json"), "--k", "3", "--format", "csv"});
  EXPECT_EQ(sums.out, "k,value,exact\n1,1,1\n2,0.38,19/50\n3,0.16,4/25\n");
}

TEST(Cli, ByteIdenticalAcrossRunsAndWorkers) {
  const std::vector<std::vector<std::string>> cases{
      {"beta", "--p", data("p532.json"), "--t", "0.5,2", "--mc", "--samples", "20000"},
      {"code-stats", "--p", data("half.json"), "--code", data("code_swap.json"), "--mc", "--samples",
       "3000", "--horizon", "2"},
      {"cocycle-check", "--p", data("p532.json"), "--trials", "40", "--seed", "9"},
      {"weakmix-check", "--p", data("p532.json"), "--pairs", "15", "--seed", "4"},
      {"end-to-end", "--p", data("p532.json"), "--perm", "(1 3)", "--samples", "5000"},
  };
  for (auto args : cases) {
    const auto first = run_cli(args);
    ASSERT_EQ(first.code, kExitOk) << args[0] << ": " << first.err;
    EXPECT_EQ(run_cli(args).out, first.out) << args[0];
    args.insert(args.end(), {"--workers", "4"});
    EXPECT_EQ(run_cli(args).out, first.out) << args[0] << " with 4 workers";
  }
}

TEST(Cli, SeedDefaultsToZero) {
  const std::vector<std::string> base{"beta", "--p", data("p532.json"), "--t", "0.5", "--mc",
                                      "--samples", "2000"};
  auto seeded = base;
  seeded.insert(seeded.end(), {"--seed", "0"});
  EXPECT_EQ(run_cli(base).out, run_cli(seeded).out);
  auto other = base;
  other.insert(other.end(), {"--seed", "1"});
  EXPECT_NE(run_cli(base).out, run_cli(other).out);
}

TEST(Cli, HelpListsSchemas) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("t,closed,limit_n,mc,stderr"), std::string::npos);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}

}  // namespace
}  // namespace freeshift::cli
