#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "oddweird/search.hpp"

namespace oddweird {

// Compact JSON with sorted keys. Exact naturals are written as decimal
// strings so values beyond 2^53 survive any JSON reader.
std::string config_to_json(const SearchConfig& config);
SearchConfig config_from_json(std::string_view json);

// The summary record. weird_found is written sorted ascending by value.
std::string report_to_json(const SearchReport& report);
SearchReport report_from_json(std::string_view json);

std::string event_to_json(const WeirdEvent& e);
std::string event_to_json(const AbundantEvent& e);
std::string event_to_json(const ProgressEvent& e);
std::string summary_to_json(const SearchReport& report);

// One JSON object per line.
class JsonlSink : public EventSink {
 public:
  explicit JsonlSink(std::ostream& out, bool abundant_events = true)
      : out_(out), abundant_events_(abundant_events) {}

  void weird(const WeirdEvent& e) override;
  void abundant(const AbundantEvent& e) override;
  void progress(const ProgressEvent& e) override;
  void summary(const SearchReport& r) override;

 private:
  std::ostream& out_;
  bool abundant_events_;
};

}  // namespace oddweird
