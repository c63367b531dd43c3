#include "cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "oddweird/serialize.hpp"

namespace oddweird::cli {
namespace {

namespace fs = std::filesystem;

int invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"oddweird"};
  storage.insert(storage.end(), args);
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("oddweird_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // The summary record is the last line of a search output.
  SearchReport summary_of(const std::string& file) const {
    return report_from_json(lines(slurp(file)).back());
  }

  fs::path dir_;
};

TEST_F(CliTest, OddSearchIsClean) {
  EXPECT_EQ(invoke({"search", "--bound", "1e6", "--sieve-primes", "10000", "--out",
                    path("out.jsonl")}),
            kExitClean);
  const auto r = summary_of(path("out.jsonl"));
  EXPECT_TRUE(r.conclusive);
  EXPECT_TRUE(r.weird_found.empty());
  EXPECT_GT(r.abundant_found, 0u);
}

TEST_F(CliTest, EvenSearchFindsSeventy) {
  EXPECT_EQ(invoke({"search", "--bound", "100", "--roots", "2", "--sieve-primes", "1000",
                    "--out", path("out.jsonl")}),
            kExitWeirdFound);
  const auto all = lines(slurp(path("out.jsonl")));
  EXPECT_NE(std::find(all.begin(), all.end(),
                      R"({"abundance":"4","factorization":"2*5*7","kind":"weird","value":"70"})"),
            all.end());
  EXPECT_EQ(summary_of(path("out.jsonl")).weird_found, (std::vector<std::string>{"2*5*7"}));
}

TEST_F(CliTest, ScientificAndDecimalBoundsAgree) {
  EXPECT_EQ(invoke({"search", "--bound", "1e21", "--max-nodes", "3000", "--sieve-primes",
                    "10000", "--out", path("a.jsonl")}),
            kExitInconclusive);
  EXPECT_EQ(invoke({"search", "--bound", "1000000000000000000000", "--max-nodes", "3000",
                    "--sieve-primes", "10000", "--out", path("b.jsonl")}),
            kExitInconclusive);
  EXPECT_TRUE(equivalent(summary_of(path("a.jsonl")), summary_of(path("b.jsonl"))));
}

TEST_F(CliTest, CheckpointAndResume) {
  ASSERT_EQ(invoke({"search", "--bound", "1e7", "--sieve-primes", "10000", "--out",
                    path("full.jsonl")}),
            kExitClean);
  ASSERT_EQ(invoke({"search", "--bound", "1e7", "--sieve-primes", "10000", "--max-nodes",
                    "1000", "--checkpoint", path("ck.json"), "--out", path("part.jsonl")}),
            kExitInconclusive);
  ASSERT_TRUE(fs::exists(path("ck.json")));
  ASSERT_EQ(invoke({"search", "--resume", path("ck.json"), "--sieve-primes", "10000",
                    "--out", path("rest.jsonl")}),
            kExitClean);
  EXPECT_TRUE(equivalent(summary_of(path("rest.jsonl")), summary_of(path("full.jsonl"))));
}

TEST_F(CliTest, VerifyRange) {
  ::testing::internal::CaptureStdout();
  const int code = invoke({"verify", "--range", "1", "100000"});
  const std::string out = ::testing::internal::GetCapturedStdout();
  EXPECT_EQ(code, kExitClean);
  EXPECT_NE(out.find("70 2*5*7"), std::string::npos);
}

TEST_F(CliTest, VerifyNumber) {
  ::testing::internal::CaptureStdout();
  EXPECT_EQ(invoke({"verify", "--number", "945"}), kExitClean);
  EXPECT_NE(::testing::internal::GetCapturedStdout().find("semiperfect"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}), kExitUsage);
  EXPECT_EQ(invoke({"search"}), kExitUsage);
  EXPECT_EQ(invoke({"search", "--bound", "abc"}), kExitUsage);
  EXPECT_EQ(invoke({"search", "--bound", "1.5"}), kExitUsage);
  EXPECT_EQ(invoke({"search", "--bound", "1e53"}), kExitUsage);
  EXPECT_EQ(invoke({"search", "--bound", "1000", "--roots", "3,3^2"}), kExitUsage);
  EXPECT_EQ(invoke({"search", "--bound", "1000", "--no-such-flag"}), kExitUsage);
  EXPECT_EQ(invoke({"verify"}), kExitUsage);
  EXPECT_EQ(invoke({"merge", "--units-dir", path("nothing")}), kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}), kExitUsage);
}

TEST_F(CliTest, SplitRunMergeMatchesSearch) {
  for (const auto& roots : {std::string("3,5"), std::string("2")}) {
    const std::string bound = roots == "2" ? "1e5" : "1e7";
    const int expected = roots == "2" ? kExitWeirdFound : kExitClean;
    const std::string units = path("units_" + std::string(roots == "2" ? "even" : "odd"));
    ASSERT_EQ(invoke({"search", "--bound", bound, "--roots", roots, "--sieve-primes", "10000",
                      "--out", path("serial.jsonl")}),
              expected);
    ASSERT_EQ(invoke({"split", "--bound", bound, "--roots", roots, "--sieve-primes", "10000",
                      "--frontier-depth", "3", "--units-dir", units}),
              kExitClean);
    // Running a single unit first exercises the skip-completed logic.
    const auto first = fs::directory_iterator(fs::path(units) / "units")->path().stem();
    ASSERT_EQ(invoke({"run-unit", "--units-dir", units, "--sieve-primes", "10000",
                      first.string()}),
              kExitClean);
    ASSERT_EQ(invoke({"merge", "--units-dir", units, "--out", path("partial.json")}),
              kExitInconclusive);
    ASSERT_EQ(invoke({"run-unit", "--units-dir", units, "--sieve-primes", "10000",
                      "--workers", "3"}),
              kExitClean);
    ASSERT_EQ(invoke({"merge", "--units-dir", units, "--out", path("merged.json")}), expected);

    const auto serial = summary_of(path("serial.jsonl"));
    const auto merged = summary_of(path("merged.json"));
    EXPECT_TRUE(merged.conclusive);
    EXPECT_TRUE(equivalent(merged, serial));
  }
}

TEST_F(CliTest, Bench) {
  ::testing::internal::CaptureStdout();
  EXPECT_EQ(invoke({"bench", "--bound", "1e6", "--sieve-primes", "10000", "--repeat", "2"}),
            kExitClean);
  const std::string out = ::testing::internal::GetCapturedStdout();
  EXPECT_NE(out.find("\"nodes_visited\":"), std::string::npos);
}

}  // namespace
}  // namespace oddweird::cli
