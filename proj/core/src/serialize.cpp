#include "oddweird/serialize.hpp"

#include "json_internal.hpp"
#include "oddweird/errors.hpp"

namespace oddweird {

namespace detail {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

json config_json(const SearchConfig& c) {
  json roots = json::array();
  for (const auto& r : c.roots) roots.push_back(r.to_string());
  json j;
  j["bound"] = to_string(c.bound);
  j["abundance_cap"] = c.abundance_cap ? json(to_string(*c.abundance_cap)) : json(nullptr);
  j["roots"] = std::move(roots);
  j["barrier_stride"] = c.barrier_stride;
  j["barrier_enabled"] = c.barrier_enabled;
  j["prime_hard_cap"] = std::to_string(c.prime_hard_cap);
  j["subset_sum_budget"] = c.subset_sum_budget ? json(*c.subset_sum_budget) : json(nullptr);
  return j;
}

SearchConfig config_from(const json& j) {
  SearchConfig c;
  c.bound = parse_nat(field<std::string>(j, "bound"));
  if (j.contains("abundance_cap") && !j["abundance_cap"].is_null()) {
    c.abundance_cap = parse_nat(field<std::string>(j, "abundance_cap"));
  }
  for (const auto& r : field<std::vector<std::string>>(j, "roots")) {
    c.roots.push_back(FactoredNumber::parse(r));
  }
  c.barrier_stride = field<std::uint64_t>(j, "barrier_stride");
  if (j.contains("barrier_enabled")) c.barrier_enabled = field<bool>(j, "barrier_enabled");
  if (j.contains("prime_hard_cap")) {
    Nat cap = parse_nat(field<std::string>(j, "prime_hard_cap"));
    if (!fits_u64(cap)) throw InvalidInput("prime_hard_cap must be below 2^64");
    c.prime_hard_cap = to_u64(cap);
  }
  if (j.contains("subset_sum_budget") && !j["subset_sum_budget"].is_null()) {
    c.subset_sum_budget = field<std::uint64_t>(j, "subset_sum_budget");
  }
  return c;
}

json report_json(const SearchReport& r) {
  const SearchReport sorted = normalized(r);
  json j;
  j["nodes_visited"] = r.nodes_visited;
  j["barrier_prunes"] = r.barrier_prunes;
  j["bound_prunes"] = r.bound_prunes;
  j["abundant_found"] = r.abundant_found;
  j["semiperfect_count"] = r.semiperfect_count;
  j["unchecked_abundant_count"] = r.unchecked_abundant_count;
  j["weird_found"] = sorted.weird_found;
  j["config"] = r.config_echo.empty() ? json(nullptr) : parse_json(r.config_echo);
  j["wall_time_seconds"] = r.wall_time_seconds;
  j["conclusive"] = r.conclusive;
  j["abort_reason"] = r.abort_reason.empty() ? json(nullptr) : json(r.abort_reason);
  return j;
}

SearchReport report_from(const json& j) {
  SearchReport r;
  r.nodes_visited = field<std::uint64_t>(j, "nodes_visited");
  r.barrier_prunes = field<std::uint64_t>(j, "barrier_prunes");
  r.bound_prunes = field<std::uint64_t>(j, "bound_prunes");
  r.abundant_found = field<std::uint64_t>(j, "abundant_found");
  r.semiperfect_count = field<std::uint64_t>(j, "semiperfect_count");
  r.unchecked_abundant_count = field<std::uint64_t>(j, "unchecked_abundant_count");
  r.weird_found = field<std::vector<std::string>>(j, "weird_found");
  if (j.contains("config") && !j["config"].is_null()) r.config_echo = j["config"].dump();
  r.wall_time_seconds = field<double>(j, "wall_time_seconds");
  r.conclusive = field<bool>(j, "conclusive");
  if (j.contains("abort_reason") && !j["abort_reason"].is_null()) {
    r.abort_reason = field<std::string>(j, "abort_reason");
  }
  return r;
}

}  // namespace detail

std::string config_to_json(const SearchConfig& config) {
  return detail::config_json(config).dump();
}

SearchConfig config_from_json(std::string_view json) {
  return detail::config_from(detail::parse_json(json));
}

std::string report_to_json(const SearchReport& report) {
  return detail::report_json(report).dump();
}

SearchReport report_from_json(std::string_view json) {
  return detail::report_from(detail::parse_json(json));
}

std::string event_to_json(const WeirdEvent& e) {
  detail::json j;
  j["kind"] = "weird";
  j["factorization"] = e.factorization;
  j["value"] = to_string(e.value);
  j["abundance"] = to_string(e.abundance);
  return j.dump();
}

std::string event_to_json(const AbundantEvent& e) {
  detail::json j;
  j["kind"] = "abundant";
  j["factorization"] = e.factorization;
  j["classification"] = std::string(to_string(e.classification));
  return j.dump();
}

std::string event_to_json(const ProgressEvent& e) {
  detail::json j;
  j["kind"] = "progress";
  j["nodes_visited"] = e.nodes_visited;
  j["current_path"] = e.current_path;
  return j.dump();
}

std::string summary_to_json(const SearchReport& report) {
  detail::json j = detail::report_json(report);
  j["kind"] = "summary";
  return j.dump();
}

void JsonlSink::weird(const WeirdEvent& e) { out_ << event_to_json(e) << '\n' << std::flush; }

void JsonlSink::abundant(const AbundantEvent& e) {
  if (abundant_events_) out_ << event_to_json(e) << '\n';
}

void JsonlSink::progress(const ProgressEvent& e) {
  out_ << event_to_json(e) << '\n' << std::flush;
}

void JsonlSink::summary(const SearchReport& r) {
  out_ << summary_to_json(r) << '\n' << std::flush;
}

}  // namespace oddweird
