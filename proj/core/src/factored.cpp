#include "oddweird/factored.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "oddweird/errors.hpp"
#include "oddweird/primes.hpp"

namespace oddweird {

namespace {

[[noreturn]] void rethrow_as_overflow(const char* what) {
  throw OverflowError(std::string("exact arithmetic overflow in ") + what);
}

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  if (s.empty() || (s.size() > 1 && s.front() == '0')) {
    throw InvalidInput("non-canonical number in factorization '" + std::string(whole) + "'");
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidInput("bad number in factorization '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

FactoredNumber FactoredNumber::build(std::vector<PrimePower> factors) {
  FactoredNumber n;
  try {
    for (const auto& [p, m] : factors) {
      Nat power = 1;
      Nat power_sum = 1;
      for (std::uint32_t i = 0; i < m; ++i) {
        power *= p;
        power_sum += power;
      }
      n.sigma_top_excluded_ = n.sigma_;
      n.top_power_ = power;
      n.top_power_sum_ = power_sum;
      n.value_ *= power;
      n.sigma_ *= power_sum;
      n.total_multiplicity_ += m;
    }
  } catch (const std::overflow_error&) {
    rethrow_as_overflow("from_factors");
  }
  n.factors_ = std::move(factors);
  return n;
}

FactoredNumber FactoredNumber::from_factors(std::span<const PrimePower> factors) {
  std::uint64_t previous = 0;
  for (const auto& [p, m] : factors) {
    if (p <= previous) {
      throw InvalidInput("primes must be strictly increasing (" + std::to_string(p) +
                         " after " + std::to_string(previous) + ")");
    }
    if (m == 0) throw InvalidInput("zero multiplicity for prime " + std::to_string(p));
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
    previous = p;
  }
  return build({factors.begin(), factors.end()});
}

FactoredNumber from_factors(std::span<const PrimePower> factors) {
  return FactoredNumber::from_factors(factors);
}

FactoredNumber FactoredNumber::parse(std::string_view text) {
  if (text == "1") return FactoredNumber{};
  std::vector<PrimePower> factors;
  std::string_view rest = text;
  while (true) {
    auto star = rest.find('*');
    std::string_view term = rest.substr(0, star);
    std::uint64_t p = 0;
    std::uint64_t m = 1;
    if (auto caret = term.find('^'); caret != std::string_view::npos) {
      p = parse_u64(term.substr(0, caret), text);
      m = parse_u64(term.substr(caret + 1), text);
      if (m < 2 || m > 0xffffffffu) {
        throw InvalidInput("non-canonical exponent in '" + std::string(text) + "'");
      }
    } else {
      p = parse_u64(term, text);
    }
    factors.push_back({p, static_cast<std::uint32_t>(m)});
    if (star == std::string_view::npos) break;
    rest.remove_prefix(star + 1);
  }
  return from_factors(factors);
}

Int FactoredNumber::abundance() const {
  return Int(sigma_) - 2 * Int(value_);
}

void FactoredNumber::push_prime(std::uint64_t p) {
  const std::uint64_t top = largest_prime();
  if (p < top || p < 2) {
    throw ContractViolation("append_prime: " + std::to_string(p) +
                            " is below the largest prime factor " + std::to_string(top));
  }
  try {
    if (p == top) {
      top_power_ *= p;
      top_power_sum_ += top_power_;
      sigma_ = sigma_top_excluded_ * top_power_sum_;
      ++factors_.back().multiplicity;
    } else {
      sigma_top_excluded_ = sigma_;
      top_power_ = p;
      top_power_sum_ = p;
      top_power_sum_ += 1u;
      sigma_ *= top_power_sum_;
      factors_.push_back({p, 1});
    }
    value_ *= p;
  } catch (const std::overflow_error&) {
    rethrow_as_overflow("append_prime");
  }
  ++total_multiplicity_;
}

FactoredNumber append_prime(const FactoredNumber& n, std::uint64_t p) {
  FactoredNumber child = n;
  child.push_prime(p);
  return child;
}

FactoredNumber pred(const FactoredNumber& n) {
  if (n.is_one()) throw NoPredecessor("1 has no predecessor");
  std::vector<PrimePower> factors = n.factors();
  if (--factors.back().multiplicity == 0) factors.pop_back();
  return from_factors(factors);
}

std::string FactoredNumber::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [p, m] : factors_) {
    if (!out.empty()) out += '*';
    out += std::to_string(p);
    if (m > 1) {
      out += '^';
      out += std::to_string(m);
    }
  }
  return out;
}

namespace {

template <typename T>
std::vector<T> enumerate_divisors(const FactoredNumber& n, const T& limit) {
  std::vector<T> divisors;
  if (limit < 1u) return divisors;
  divisors.push_back(1u);
  for (const auto& [p, m] : n.factors()) {
    const std::size_t base_count = divisors.size();
    for (std::size_t i = 0; i < base_count; ++i) {
      T d = divisors[i];
      for (std::uint32_t e = 0; e < m; ++e) {
        // d * p <= limit  <=>  d <= limit / p
        if (d > limit / p) break;
        d *= p;
        divisors.push_back(d);
      }
    }
  }
  std::sort(divisors.begin(), divisors.end(), std::greater<>());
  return divisors;
}

}  // namespace

std::vector<Nat> divisors_up_to(const FactoredNumber& n, const Nat& limit) {
  return enumerate_divisors<Nat>(n, limit);
}

std::vector<std::uint64_t> divisors_up_to_u64(const FactoredNumber& n, std::uint64_t limit) {
  return enumerate_divisors<std::uint64_t>(n, limit);
}

bool is_tree_ancestor(const FactoredNumber& ancestor, const FactoredNumber& n) {
  const auto& a = ancestor.factors();
  const auto& b = n.factors();
  // The pred-chain of n strips its factorization from the top, so the
  // ancestors of n are exactly its factorization prefixes.
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool last = i + 1 == a.size();
    if (a[i].prime != b[i].prime) return false;
    if (!last && a[i].multiplicity != b[i].multiplicity) return false;
    if (last && a[i].multiplicity > b[i].multiplicity) return false;
  }
  return true;
}

}  // namespace oddweird
