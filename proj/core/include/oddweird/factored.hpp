#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oddweird/nat.hpp"

namespace oddweird {

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t multiplicity = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A natural number carried together with its prime factorization and its
// divisor sum. Children in the search tree are produced by append_prime,
// which updates sigma in a constant number of operations.
class FactoredNumber {
 public:
  // The number 1.
  FactoredNumber() = default;

  // Validates that primes are strictly increasing, actually prime, and that
  // multiplicities are positive. Throws InvalidInput otherwise.
  static FactoredNumber from_factors(std::span<const PrimePower> factors);

  // Parses the canonical text form `p1^m1*p2^m2*...` (`^1` omitted, `1` for
  // the number one). Only canonical text is accepted, so parsing and
  // to_string round-trip exactly.
  static FactoredNumber parse(std::string_view text);

  const Nat& value() const { return value_; }
  const Nat& sigma() const { return sigma_; }
  // sigma(value / p*^m*), p* the largest prime factor with multiplicity m*.
  const Nat& sigma_top_excluded() const { return sigma_top_excluded_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  // 0 for the number 1.
  std::uint64_t largest_prime() const { return factors_.empty() ? 0 : factors_.back().prime; }

  // Prime factors counted with multiplicity; the depth in the search tree.
  std::uint32_t total_multiplicity() const { return total_multiplicity_; }

  bool is_one() const { return factors_.empty(); }

  // sigma - 2 value.
  Int abundance() const;
  bool is_abundant() const { return sigma_ > 2 * value_; }

  // In-place form of append_prime; throws ContractViolation if p is below the
  // largest prime factor and OverflowError if the result leaves 256 bits.
  void push_prime(std::uint64_t p);

  std::string to_string() const;

  friend bool operator==(const FactoredNumber&, const FactoredNumber&) = default;

 private:
  static FactoredNumber build(std::vector<PrimePower> factors);

  Nat value_ = 1;
  Nat sigma_ = 1;
  Nat sigma_top_excluded_ = 1;
  // p*^m* and 1 + p* + ... + p*^m*, cached for the constant-time update.
  Nat top_power_ = 1;
  Nat top_power_sum_ = 1;
  std::vector<PrimePower> factors_;
  std::uint32_t total_multiplicity_ = 0;
};

FactoredNumber from_factors(std::span<const PrimePower> factors);

// The child N * p. Precondition: p prime and p >= n.largest_prime().
FactoredNumber append_prime(const FactoredNumber& n, std::uint64_t p);

// N divided by its largest prime factor. Throws NoPredecessor for 1.
FactoredNumber pred(const FactoredNumber& n);

// Divisors d <= limit of n, strictly decreasing. Built from the
// factorization, never by trial division.
std::vector<Nat> divisors_up_to(const FactoredNumber& n, const Nat& limit);

// 64-bit variant for callers that know limit < 2^64.
std::vector<std::uint64_t> divisors_up_to_u64(const FactoredNumber& n, std::uint64_t limit);

inline Int abundance(const FactoredNumber& n) { return n.abundance(); }

// True when `ancestor` lies on the pred-chain of `n` (or equals it).
bool is_tree_ancestor(const FactoredNumber& ancestor, const FactoredNumber& n);

}  // namespace oddweird
