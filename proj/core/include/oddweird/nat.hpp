#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace oddweird {

// Exact naturals. 256 bits covers every bound the search accepts
// (< 4.90e52, about 2^175) with room for the barrier products; the
// checked backend throws instead of wrapping.
using Nat = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
    256, 256, boost::multiprecision::unsigned_magnitude,
    boost::multiprecision::checked, void>>;

// Signed counterpart, used for abundance.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
    256, 256, boost::multiprecision::signed_magnitude,
    boost::multiprecision::checked, void>>;

inline constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

// Parses a decimal integer ("1000000") or exact scientific notation
// ("1e21", "2.01e25"). Throws InvalidInput when the text is malformed or
// does not denote an integer, OverflowError when it does not fit.
Nat parse_nat(std::string_view text);

std::string to_string(const Nat& n);
std::string to_string(const Int& n);

inline bool fits_u64(const Nat& n) { return n <= kU64Max; }

// Precondition: fits_u64(n).
inline std::uint64_t to_u64(const Nat& n) { return n.convert_to<std::uint64_t>(); }

// Clamps to UINT64_MAX.
inline std::uint64_t saturate_u64(const Nat& n) {
  return fits_u64(n) ? to_u64(n) : kU64Max;
}

Nat pow10(unsigned exponent);

}  // namespace oddweird
