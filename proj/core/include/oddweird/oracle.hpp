#pragma once

#include <cstdint>

#include "oddweird/classify.hpp"

namespace oddweird {

inline constexpr std::uint64_t kOracleMax = 10'000'000;

// Reference classification for small n by trial-division divisor listing and
// a dense bitset subset-sum table. Shares no code with classify(); it exists
// to cross-check it. Throws OutOfRange unless 1 <= n <= kOracleMax.
Classification oracle_classify(std::uint64_t n);

// Dense dynamic-programming subset-sum decision, for test cross-checks.
// Items need not be sorted or distinct (each is used at most once).
bool oracle_subset_sum(const std::vector<std::uint64_t>& items, std::uint64_t target);

}  // namespace oddweird
