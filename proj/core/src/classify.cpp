#include "oddweird/classify.hpp"

#include <algorithm>
#include <string>

#include "oddweird/errors.hpp"

namespace oddweird {

namespace {

template <typename T>
class SubsetSumSolver {
 public:
  SubsetSumSolver(const std::vector<T>& items, NodeBudget budget)
      : items_(items), budget_(budget.value_or(kU64Max)) {}

  // Is there a subset of items_[i..] summing to target? `remaining` is the
  // sum of items_[i..].
  bool solve(std::size_t i, T target, T remaining) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("subset-sum node budget of " + std::to_string(budget_) +
                           " exhausted");
    }
    const std::size_t n = items_.size();
    for (;;) {
      if (target == 0u) return true;
      while (i < n && items_[i] > target) {
        remaining -= items_[i];
        ++i;
      }
      if (i == n || remaining < target) return false;
      if (items_[i] == target || remaining == target) return true;
      // Picking a subset summing to target is the same as leaving out one
      // summing to remaining - target; keep the smaller of the two.
      if (target > remaining - target) {
        target = remaining - target;
        continue;
      }
      break;
    }
    const T& x = items_[i];
    return solve(i + 1, target - x, remaining - x) || solve(i + 1, target, remaining - x);
  }

 private:
  const std::vector<T>& items_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::kDeficient:
      return "deficient";
    case Classification::kPerfect:
      return "perfect";
    case Classification::kSemiperfect:
      return "semiperfect";
    case Classification::kWeird:
      return "weird";
    case Classification::kUncheckedAbundant:
      return "unchecked-abundant";
  }
  return "?";
}

Classification parse_classification(std::string_view text) {
  for (auto c : {Classification::kDeficient, Classification::kPerfect,
                 Classification::kSemiperfect, Classification::kWeird,
                 Classification::kUncheckedAbundant}) {
    if (to_string(c) == text) return c;
  }
  throw InvalidInput("unknown classification '" + std::string(text) + "'");
}

SubsetSumInstance SubsetSumInstance::make(std::vector<Nat> items, Nat target) {
  std::sort(items.begin(), items.end(), std::greater<>());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Nat total = 0;
  for (const auto& x : items) total += x;
  return {std::move(items), std::move(target), std::move(total)};
}

bool subset_sum_exists(const SubsetSumInstance& inst, NodeBudget budget) {
  if (inst.target > inst.total) return false;
  SubsetSumSolver<Nat> solver(inst.items, budget);
  return solver.solve(0, inst.target, inst.total);
}

bool subset_sum_exists_u64(const std::vector<std::uint64_t>& items, std::uint64_t target,
                           NodeBudget budget) {
  std::uint64_t total = 0;
  for (auto x : items) total += x;
  if (target > total) return false;
  SubsetSumSolver<std::uint64_t> solver(items, budget);
  return solver.solve(0, target, total);
}

Classification classify(const FactoredNumber& n, const std::optional<Nat>& abundance_cap,
                        NodeBudget budget) {
  const Nat twice = 2 * n.value();
  if (n.sigma() < twice) return Classification::kDeficient;
  if (n.sigma() == twice) return Classification::kPerfect;
  const Nat a = n.sigma() - twice;
  if (abundance_cap && a > *abundance_cap) return Classification::kUncheckedAbundant;

  // Proper divisors only: N itself is a candidate item when A(N) >= N.
  const Nat limit = a < n.value() ? a : Nat(n.value() - 1u);

  constexpr std::uint64_t kFastLimit = std::uint64_t{1} << 62;
  if (a < kFastLimit) {
    auto items = divisors_up_to_u64(n, to_u64(limit));
    unsigned __int128 total = 0;
    for (auto x : items) total += x;
    if (total < kFastLimit) {
      return subset_sum_exists_u64(items, to_u64(a), budget) ? Classification::kSemiperfect
                                                              : Classification::kWeird;
    }
  }
  SubsetSumInstance inst = SubsetSumInstance::make(divisors_up_to(n, limit), a);
  return subset_sum_exists(inst, budget) ? Classification::kSemiperfect
                                         : Classification::kWeird;
}

}  // namespace oddweird
