#include "oddweird/partition.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oddweird/errors.hpp"
#include "oracles.hpp"

namespace oddweird {
namespace {

using testing::CollectingSink;

const PrimeSource& small_primes() {
  static const PrimeSource primes(20'000);
  return primes;
}

SearchConfig even_config(const char* bound) {
  SearchConfig c;
  c.bound = parse_nat(bound);
  c.roots = {FactoredNumber::parse("2")};
  return c;
}

std::vector<UnitReport> run_all(const SplitResult& s) {
  std::vector<UnitReport> out;
  for (const auto& u : s.units) out.push_back(run_unit(u, small_primes()));
  return out;
}

std::vector<std::string> ids(const SplitResult& s) {
  std::vector<std::string> out;
  for (const auto& u : s.units) out.push_back(u.id);
  return out;
}

TEST(UnitId, ReplacesMultiplicationSigns) {
  EXPECT_EQ(unit_id_for(FactoredNumber::parse("3^2*5*7")), "3^2_5_7");
  EXPECT_EQ(unit_id_for(FactoredNumber::parse("5")), "5");
}

TEST(Split, DepthOneYieldsTheRoots) {
  const auto s = split(make_config(1'000'000), 1, small_primes());
  EXPECT_EQ(ids(s), (std::vector<std::string>{"3", "5"}));
  EXPECT_EQ(s.frontier.report.nodes_visited, 0u);
  EXPECT_EQ(s.frontier.emitted_units, ids(s));
  EXPECT_EQ(s.frontier.status, UnitStatus::kComplete);
}

TEST(Split, DepthTwo) {
  const auto s = split(make_config(1'000'000), 2, small_primes());
  const auto got = ids(s);
  EXPECT_EQ(s.frontier.report.nodes_visited, 2u);
  EXPECT_NE(std::find(got.begin(), got.end(), "3^2"), got.end());
  EXPECT_NE(std::find(got.begin(), got.end(), "3_5"), got.end());
  EXPECT_NE(std::find(got.begin(), got.end(), "5^2"), got.end());
  EXPECT_EQ(std::set<std::string>(got.begin(), got.end()).size(), got.size());
}

TEST(Split, FrontierBelowTreeDepthKeepsEverything) {
  const auto s = split(even_config("100"), 50, small_primes());
  EXPECT_TRUE(s.units.empty());
  EXPECT_EQ(s.frontier.report.weird_found, (std::vector<std::string>{"2*5*7"}));
  const auto merged = merge({}, s.frontier);
  EXPECT_TRUE(merged.conclusive);
  EXPECT_TRUE(equivalent(merged, search(even_config("100"), small_primes())));
}

TEST(Split, RejectsDepthZero) {
  EXPECT_THROW(split(make_config(1000), 0, small_primes()), InvalidInput);
}

TEST(Merge, MatchesSerialSearch) {
  for (const auto& config : {make_config(1'000'000), even_config("1e5")}) {
    const auto serial = search(config, small_primes());
    for (std::uint32_t depth = 1; depth <= 4; ++depth) {
      const auto s = split(config, depth, small_primes());
      auto reports = run_all(s);
      std::reverse(reports.begin(), reports.end());  // order must not matter
      const auto merged = merge(reports, s.frontier);
      EXPECT_TRUE(merged.conclusive) << merged.abort_reason;
      EXPECT_TRUE(equivalent(merged, serial)) << "depth " << depth;
    }
  }
}

TEST(Merge, UnitsAreDisjointAndCoverTheTree) {
  SearchConfig config = even_config("1e5");
  config.progress_every = 1;
  CollectingSink serial_sink;
  search(config, small_primes(), serial_sink);
  std::multiset<std::string> serial(serial_sink.trace.begin(), serial_sink.trace.end());

  for (std::uint32_t depth = 1; depth <= 4; ++depth) {
    CollectingSink frontier_sink;
    Searcher splitter(config, small_primes(), &frontier_sink);
    std::vector<FactoredNumber> roots;
    splitter.set_frontier(depth, [&](const FactoredNumber& n) { roots.push_back(n); });
    splitter.run();
    std::multiset<std::string> pieces(frontier_sink.trace.begin(), frontier_sink.trace.end());
    for (const auto& r : roots) {
      CollectingSink sink;
      run_unit({unit_id_for(r), r, config}, small_primes(), &sink);
      pieces.insert(sink.trace.begin(), sink.trace.end());
    }
    EXPECT_EQ(pieces, serial) << "depth " << depth;
  }
}

TEST(Merge, MissingUnitIsNotConclusive) {
  const auto s = split(make_config(1'000'000), 2, small_primes());
  auto reports = run_all(s);
  reports.pop_back();
  const auto merged = merge(reports, s.frontier);
  EXPECT_FALSE(merged.conclusive);
  EXPECT_NE(merged.abort_reason.find("missing"), std::string::npos);
}

TEST(Merge, DuplicateUnitIsNotConclusive) {
  const auto s = split(make_config(1'000'000), 2, small_primes());
  auto reports = run_all(s);
  reports.push_back(reports.front());
  const auto merged = merge(reports, s.frontier);
  EXPECT_FALSE(merged.conclusive);
  EXPECT_NE(merged.abort_reason.find("duplicate"), std::string::npos);
}

TEST(Merge, UnexpectedUnitIsNotConclusive) {
  const auto s = split(make_config(1'000'000), 2, small_primes());
  auto reports = run_all(s);
  UnitReport stray;
  stray.unit_id = "7";
  reports.push_back(stray);
  EXPECT_FALSE(merge(reports, s.frontier).conclusive);
}

TEST(Merge, AbortedUnitIsNotConclusive) {
  SearchConfig config = even_config("1e4");
  const auto s = split(config, 2, small_primes());
  std::vector<UnitReport> reports;
  for (auto unit : s.units) {
    unit.config.subset_sum_budget = 1;
    reports.push_back(run_unit(unit, small_primes()));
  }
  const bool any_aborted = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.status == UnitStatus::kAborted;
  });
  ASSERT_TRUE(any_aborted);
  const auto merged = merge(reports, s.frontier);
  EXPECT_FALSE(merged.conclusive);
  EXPECT_NE(merged.abort_reason.find("aborted"), std::string::npos);
}

TEST(Merge, AbortedFrontierIsNotConclusive) {
  SearchConfig config = make_config(parse_nat("1e12"));
  config.prime_hard_cap = 7;  // node 3 alone needs children up to 3 * 29
  const auto s = split(config, 3, small_primes());
  EXPECT_EQ(s.frontier.status, UnitStatus::kAborted);
  EXPECT_FALSE(merge(run_all(s), s.frontier).conclusive);
}

TEST(RunUnit, ReportsFailuresAsAborted) {
  WorkUnit unit{"3", FactoredNumber::parse("3"), make_config(parse_nat("1e12"))};
  unit.config.prime_hard_cap = 1000;
  const auto r = run_unit(unit, small_primes());
  EXPECT_EQ(r.status, UnitStatus::kAborted);
  EXPECT_FALSE(r.report.abort_reason.empty());
}

TEST(PartitionJson, UnitRoundTrip) {
  const auto s = split(make_config(parse_nat("1e28")), 1, small_primes());
  ASSERT_EQ(s.units.size(), 3u);
  for (const auto& u : s.units) {
    const auto back = unit_from_json(unit_to_json(u));
    EXPECT_EQ(back.id, u.id);
    EXPECT_EQ(back.root, u.root);
    EXPECT_EQ(back.config.bound, u.config.bound);
    EXPECT_EQ(unit_to_json(back), unit_to_json(u));
  }
}

TEST(PartitionJson, UnitIdMustMatchRoot) {
  WorkUnit u{"3", FactoredNumber::parse("3"), make_config(1000)};
  std::string text = unit_to_json(u);
  text.replace(text.find("\"id\":\"3\""), 8, "\"id\":\"5\"");
  EXPECT_THROW(unit_from_json(text), InvalidInput);
}

TEST(PartitionJson, ReportRoundTrip) {
  const auto s = split(even_config("1e4"), 3, small_primes());
  const auto reports = run_all(s);
  std::vector<UnitReport> back;
  for (const auto& r : reports) {
    back.push_back(unit_report_from_json(unit_report_to_json(r)));
    EXPECT_EQ(unit_report_to_json(back.back()), unit_report_to_json(r));
  }
  const auto frontier = unit_report_from_json(unit_report_to_json(s.frontier));
  EXPECT_EQ(frontier.emitted_units, s.frontier.emitted_units);
  EXPECT_TRUE(equivalent(merge(back, frontier), merge(reports, s.frontier)));
  EXPECT_THROW(unit_report_from_json(R"({"unit_id":"3","status":"done"})"), InvalidInput);
}

TEST(Merge, RerunningUnitsIsHarmless) {
  // A unit run twice (e.g. after a crash) gives identical reports, so either
  // copy can be kept.
  const auto s = split(make_config(1'000'000), 3, small_primes());
  for (const auto& u : s.units) {
    const auto a = run_unit(u, small_primes());
    const auto b = run_unit(u, small_primes());
    EXPECT_TRUE(equivalent(a.report, b.report));
  }
}

}  // namespace
}  // namespace oddweird
