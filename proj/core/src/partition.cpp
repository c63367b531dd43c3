#include "oddweird/partition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json_internal.hpp"
#include "oddweird/errors.hpp"

namespace oddweird {

std::string unit_id_for(const FactoredNumber& root) {
  std::string id = root.to_string();
  std::replace(id.begin(), id.end(), '*', '_');
  return id;
}

SplitResult split(const SearchConfig& config, std::uint32_t frontier_depth,
                  const PrimeSource& primes) {
  if (frontier_depth == 0) throw InvalidInput("frontier depth must be at least 1");
  SplitResult result;
  Searcher searcher(config, primes);
  searcher.set_frontier(frontier_depth, [&](const FactoredNumber& node) {
    result.units.push_back({unit_id_for(node), node, config});
  });
  searcher.run();
  result.frontier.unit_id = std::string(kFrontierUnitId);
  result.frontier.report = searcher.report();
  result.frontier.status =
      result.frontier.report.conclusive ? UnitStatus::kComplete : UnitStatus::kAborted;
  for (const auto& u : result.units) result.frontier.emitted_units.push_back(u.id);
  return result;
}

UnitReport run_unit(const WorkUnit& unit, const PrimeSource& primes, EventSink* sink) {
  UnitReport out;
  out.unit_id = unit.id;
  try {
    SearchConfig config = unit.config;
    config.roots = {unit.root};
    Searcher searcher(std::move(config), primes, sink);
    searcher.run();
    out.report = searcher.report();
  } catch (const std::exception& e) {
    out.report.conclusive = false;
    out.report.abort_reason = e.what();
  }
  out.status = out.report.conclusive ? UnitStatus::kComplete : UnitStatus::kAborted;
  return out;
}

SearchReport merge(std::span<const UnitReport> reports, const UnitReport& frontier) {
  SearchReport merged;
  merged.config_echo = frontier.report.config_echo;
  std::vector<std::string> problems;

  auto add = [&merged](const SearchReport& r) {
    merged.nodes_visited += r.nodes_visited;
    merged.barrier_prunes += r.barrier_prunes;
    merged.bound_prunes += r.bound_prunes;
    merged.abundant_found += r.abundant_found;
    merged.semiperfect_count += r.semiperfect_count;
    merged.unchecked_abundant_count += r.unchecked_abundant_count;
    merged.weird_found.insert(merged.weird_found.end(), r.weird_found.begin(),
                              r.weird_found.end());
    merged.wall_time_seconds += r.wall_time_seconds;
  };

  if (frontier.status != UnitStatus::kComplete) problems.push_back("frontier aborted");
  add(frontier.report);

  const std::set<std::string> expected(frontier.emitted_units.begin(),
                                       frontier.emitted_units.end());
  std::map<std::string, int> seen;
  for (const auto& r : reports) {
    if (++seen[r.unit_id] > 1) {
      problems.push_back("duplicate unit " + r.unit_id);
      continue;
    }
    if (!expected.contains(r.unit_id)) {
      problems.push_back("unexpected unit " + r.unit_id);
      continue;
    }
    if (r.status != UnitStatus::kComplete) {
      problems.push_back("unit " + r.unit_id + " aborted: " + r.report.abort_reason);
    }
    add(r.report);
  }
  std::size_t missing = 0;
  for (const auto& id : expected) {
    if (!seen.contains(id)) ++missing;
  }
  if (missing > 0) problems.push_back(std::to_string(missing) + " unit(s) missing");

  merged = normalized(std::move(merged));
  merged.weird_found.erase(std::unique(merged.weird_found.begin(), merged.weird_found.end()),
                           merged.weird_found.end());
  if (!problems.empty()) {
    merged.conclusive = false;
    std::string reason;
    for (const auto& p : problems) {
      if (!reason.empty()) reason += "; ";
      reason += p;
    }
    merged.abort_reason = reason;
  }
  return merged;
}

std::string unit_to_json(const WorkUnit& unit) {
  detail::json j = detail::config_json(unit.config);
  j.erase("roots");
  j["id"] = unit.id;
  j["root"] = unit.root.to_string();
  return j.dump();
}

WorkUnit unit_from_json(std::string_view text) {
  detail::json j = detail::parse_json(text);
  WorkUnit unit;
  unit.id = detail::field<std::string>(j, "id");
  unit.root = FactoredNumber::parse(detail::field<std::string>(j, "root"));
  j["roots"] = detail::json::array({unit.root.to_string()});
  unit.config = detail::config_from(j);
  if (unit.id != unit_id_for(unit.root)) {
    throw InvalidInput("unit id " + unit.id + " does not match root " + unit.root.to_string());
  }
  return unit;
}

std::string unit_report_to_json(const UnitReport& r) {
  detail::json j = detail::report_json(r.report);
  j["unit_id"] = r.unit_id;
  j["status"] = r.status == UnitStatus::kComplete ? "complete" : "aborted";
  if (r.unit_id == kFrontierUnitId) j["emitted_units"] = r.emitted_units;
  return j.dump();
}

UnitReport unit_report_from_json(std::string_view text) {
  const detail::json j = detail::parse_json(text);
  UnitReport r;
  r.unit_id = detail::field<std::string>(j, "unit_id");
  const auto status = detail::field<std::string>(j, "status");
  if (status == "complete") {
    r.status = UnitStatus::kComplete;
  } else if (status == "aborted") {
    r.status = UnitStatus::kAborted;
  } else {
    throw InvalidInput("unknown unit status '" + status + "'");
  }
  r.report = detail::report_from(j);
  if (j.contains("emitted_units")) {
    r.emitted_units = detail::field<std::vector<std::string>>(j, "emitted_units");
  }
  return r;
}

}  // namespace oddweird
