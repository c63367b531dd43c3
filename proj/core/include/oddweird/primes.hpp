#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oddweird/nat.hpp"

namespace oddweird {

inline constexpr std::size_t kDefaultSievePrimes = 5'000'000;

// Baillie-PSW: a strong base-2 Fermat test followed by a strong Lucas test
// with Selfridge parameters. No counterexample exists below 2^64, so the
// answer is exact over the whole uint64_t range.
bool is_prime(std::uint64_t n);

// Same test for an exact natural; throws OutOfRange for n >= 2^64.
bool is_prime(const Nat& n);

// The first `sieve_primes` primes from a sieve of Eratosthenes, with
// next_prime falling back to candidate stepping plus is_prime past the end
// of the table. Immutable after construction.
class PrimeSource {
 public:
  explicit PrimeSource(std::size_t sieve_primes = kDefaultSievePrimes,
                       std::uint64_t hard_cap = kU64Max);

  std::size_t sieve_limit() const { return sieved_.size(); }
  std::span<const std::uint64_t> sieved() const { return sieved_; }
  std::uint64_t hard_cap() const { return hard_cap_; }

  // Smallest prime strictly greater than p. Throws PrimeRangeExhausted when
  // that prime would exceed hard_cap().
  std::uint64_t next_prime(std::uint64_t p) const;

 private:
  std::vector<std::uint64_t> sieved_;
  std::uint64_t hard_cap_;
};

}  // namespace oddweird
