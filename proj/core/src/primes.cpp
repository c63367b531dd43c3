#include "oddweird/primes.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>

#include "oddweird/errors.hpp"

namespace oddweird {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 n) {
  return static_cast<u64>(static_cast<u128>(a) * b % n);
}

inline u64 addmod(u64 a, u64 b, u64 n) {
  // a, b < n
  return a >= n - b ? a - (n - b) : a + b;
}

inline u64 submod(u64 a, u64 b, u64 n) { return a >= b ? a - b : a + (n - b); }

// x / 2 mod n for odd n.
inline u64 halfmod(u64 x, u64 n) {
  return (x & 1) ? (x >> 1) + (n >> 1) + 1 : x >> 1;
}

u64 powmod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return result;
}

bool is_strong_probable_prime_base2(u64 n) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(2, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool is_square(u64 n) {
  // The double root may round up to 2^32, whose square wraps.
  u64 r = std::min<u64>(static_cast<u64>(std::sqrt(static_cast<double>(n))), 0xffffffffu);
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

// Jacobi symbol (a/n), n odd positive.
int jacobi(u64 a, u64 n) {
  a %= n;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      u64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Strong Lucas probable-prime test, Selfridge method A: first D in
// 5, -7, 9, -11, ... with (D/n) = -1, P = 1, Q = (1 - D) / 4.
// n odd, n > 2, not a perfect square.
bool is_strong_lucas_probable_prime(u64 n) {
  std::int64_t d_signed = 5;
  for (;;) {
    u64 abs_d = static_cast<u64>(d_signed < 0 ? -d_signed : d_signed);
    u64 d_mod = d_signed < 0 ? (n - abs_d % n) % n : abs_d % n;
    int j = jacobi(d_mod, n);
    if (j == -1) break;
    if (j == 0 && abs_d != n) return false;
    d_signed = d_signed > 0 ? -(d_signed + 2) : -d_signed + 2;
  }
  const u64 d_mod = d_signed < 0 ? (n - static_cast<u64>(-d_signed) % n) % n
                                 : static_cast<u64>(d_signed) % n;
  // Q = (1 - D) / 4, reduced mod n.
  const std::int64_t q_signed = (1 - d_signed) / 4;
  const u64 q_mod = q_signed < 0 ? (n - static_cast<u64>(-q_signed) % n) % n
                                 : static_cast<u64>(q_signed) % n;

  // n + 1 = k * 2^s, k odd. n < 2^64 odd, so n + 1 may wrap only when
  // n = 2^64 - 1, which is divisible by 3 and never reaches here.
  u64 k = n + 1;
  int s = 0;
  while ((k & 1) == 0) {
    k >>= 1;
    ++s;
  }

  // Left-to-right ladder over the bits of k, starting from index 1.
  u64 u = 1;
  u64 v = 1;  // V_1 = P
  u64 qk = q_mod;
  int top = 63 - __builtin_clzll(k);
  for (int bit = top - 1; bit >= 0; --bit) {
    // Doubling: U_2m = U_m V_m, V_2m = V_m^2 - 2 Q^m.
    u = mulmod(u, v, n);
    v = submod(mulmod(v, v, n), addmod(qk, qk, n), n);
    qk = mulmod(qk, qk, n);
    if ((k >> bit) & 1) {
      // Increment: U_m+1 = (P U_m + V_m) / 2, V_m+1 = (D U_m + P V_m) / 2.
      u64 new_u = halfmod(addmod(u, v, n), n);
      u64 new_v = halfmod(addmod(mulmod(d_mod, u, n), v, n), n);
      u = new_u;
      v = new_v;
      qk = mulmod(qk, q_mod, n);
    }
  }
  if (u == 0 || v == 0) return true;
  for (int r = 1; r < s; ++r) {
    v = submod(mulmod(v, v, n), addmod(qk, qk, n), n);
    if (v == 0) return true;
    qk = mulmod(qk, qk, n);
  }
  return false;
}

constexpr u64 kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                                83, 89, 97};

// Upper bound for the n-th prime (Rosser): n (ln n + ln ln n) for n >= 6.
u64 nth_prime_upper_bound(std::size_t n) {
  if (n < 6) return 13;
  double x = static_cast<double>(n);
  return static_cast<u64>(x * (std::log(x) + std::log(std::log(x)))) + 3;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 101 * 101) return true;
  if (!is_strong_probable_prime_base2(n)) return false;
  if (is_square(n)) return false;
  return is_strong_lucas_probable_prime(n);
}

bool is_prime(const Nat& n) {
  if (!fits_u64(n)) {
    throw OutOfRange("primality of " + to_string(n) + " requested; only n < 2^64 is supported");
  }
  return is_prime(to_u64(n));
}

PrimeSource::PrimeSource(std::size_t sieve_primes, std::uint64_t hard_cap)
    : hard_cap_(hard_cap) {
  if (sieve_primes == 0) throw InvalidInput("sieve must hold at least one prime");
  try {
    const u64 limit = nth_prime_upper_bound(sieve_primes);
    // Odd numbers only: index i stands for 2i + 1.
    std::vector<bool> composite(limit / 2 + 1, false);
    sieved_.reserve(sieve_primes);
    sieved_.push_back(2);
    for (u64 i = 1; i < composite.size() && sieved_.size() < sieve_primes; ++i) {
      if (composite[i]) continue;
      const u64 p = 2 * i + 1;
      sieved_.push_back(p);
      for (u64 m = p * p / 2; m < composite.size(); m += p) composite[m] = true;
    }
  } catch (const std::bad_alloc&) {
    throw Error("out of memory building a sieve of " + std::to_string(sieve_primes) + " primes");
  }
  if (sieved_.size() != sieve_primes) {
    throw Error("sieve bound too small for " + std::to_string(sieve_primes) + " primes");
  }
}

std::uint64_t PrimeSource::next_prime(std::uint64_t p) const {
  auto exhausted = [&] {
    return PrimeRangeExhausted("no prime above " + std::to_string(p) + " within hard cap " +
                               std::to_string(hard_cap_));
  };
  if (p < sieved_.back()) {
    u64 q = *std::upper_bound(sieved_.begin(), sieved_.end(), p);
    if (q > hard_cap_) throw exhausted();
    return q;
  }
  // Odd candidates; stop before the cap or 2^64 wraps.
  u64 q = p + 1 + (p & 1);
  if (q < p) throw exhausted();
  while (q <= hard_cap_) {
    if (is_prime(q)) return q;
    if (q > kU64Max - 2) break;
    q += 2;
  }
  throw exhausted();
}

}  // namespace oddweird
