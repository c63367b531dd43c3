#pragma once

#include <json.hpp>

#include "oddweird/errors.hpp"

#include "oddweird/search.hpp"

namespace oddweird::detail {

using nlohmann::json;

json config_json(const SearchConfig& config);
SearchConfig config_from(const json& j);

json report_json(const SearchReport& report);
SearchReport report_from(const json& j);

// Parses text, mapping JSON errors to InvalidInput.
json parse_json(std::string_view text);

// Reads a required field, mapping missing/mistyped fields to InvalidInput.
template <typename T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad or missing field '") + key + "': " + e.what());
  }
}

}  // namespace oddweird::detail
