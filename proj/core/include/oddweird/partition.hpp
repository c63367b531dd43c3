#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oddweird/factored.hpp"
#include "oddweird/primes.hpp"
#include "oddweird/search.hpp"

namespace oddweird {

inline constexpr std::string_view kFrontierUnitId = "frontier";

// A subtree root plus the configuration it must be searched under.
struct WorkUnit {
  std::string id;
  FactoredNumber root;
  SearchConfig config;
};

enum class UnitStatus { kComplete, kAborted };

struct UnitReport {
  std::string unit_id;
  UnitStatus status = UnitStatus::kComplete;
  SearchReport report;
  // Only on the frontier report: ids of every unit the split emitted.
  std::vector<std::string> emitted_units;
};

struct SplitResult {
  std::vector<WorkUnit> units;
  // Everything the splitter itself visited above the frontier.
  UnitReport frontier;
};

// File-name-safe id: the canonical factorization with '*' replaced by '_'.
std::string unit_id_for(const FactoredNumber& root);

// Runs the search, but hands off every non-abundant node whose depth (prime
// factors with multiplicity) reaches frontier_depth as a work unit.
SplitResult split(const SearchConfig& config, std::uint32_t frontier_depth,
                  const PrimeSource& primes);

// search() restricted to the unit's subtree. Never throws for search
// failures; they come back as an aborted report.
UnitReport run_unit(const WorkUnit& unit, const PrimeSource& primes, EventSink* sink = nullptr);

// Sums the frontier and unit reports. The result is conclusive only when the
// frontier and every emitted unit are present exactly once and complete.
SearchReport merge(std::span<const UnitReport> reports, const UnitReport& frontier);

std::string unit_to_json(const WorkUnit& unit);
WorkUnit unit_from_json(std::string_view json);
std::string unit_report_to_json(const UnitReport& report);
UnitReport unit_report_from_json(std::string_view json);

}  // namespace oddweird
