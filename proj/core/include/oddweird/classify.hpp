#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "oddweird/factored.hpp"
#include "oddweird/nat.hpp"

namespace oddweird {

enum class Classification {
  kDeficient,
  kPerfect,
  kSemiperfect,
  kWeird,
  // Abundant, but A(N) exceeds the configured abundance cap, so the
  // subset-sum check was skipped.
  kUncheckedAbundant,
};

std::string_view to_string(Classification c);
// Inverse of to_string; throws InvalidInput on unknown tags.
Classification parse_classification(std::string_view text);

// Distinct items in strictly decreasing order, with their sum.
struct SubsetSumInstance {
  std::vector<Nat> items;
  Nat target;
  Nat total;

  // Sorts and deduplicates `items` and fills in `total`.
  static SubsetSumInstance make(std::vector<Nat> items, Nat target);
};

// Optional cap on solver recursion nodes. Exhausting it throws
// BudgetExceeded; the instance is then undecided, never "false".
using NodeBudget = std::optional<std::uint64_t>;

// Depth-first take/skip search over the items in decreasing order. At each
// node, items larger than the target are skipped, an item equal to the
// target succeeds, a branch whose remaining sum is below the target fails,
// and a target above half the remaining sum is replaced by its complement.
bool subset_sum_exists(const SubsetSumInstance& inst, NodeBudget budget = {});

// Fixed-width fast path, same algorithm. Items strictly decreasing; the sum
// of items must fit in 63 bits.
bool subset_sum_exists_u64(const std::vector<std::uint64_t>& items, std::uint64_t target,
                           NodeBudget budget = {});

// Deficient / perfect / semiperfect / weird, or unchecked-abundant when
// `abundance_cap` is set and A(N) exceeds it. Semiperfection is decided on
// the proper divisors not exceeding A(N), with target A(N).
Classification classify(const FactoredNumber& n, const std::optional<Nat>& abundance_cap = {},
                        NodeBudget budget = {});

}  // namespace oddweird
