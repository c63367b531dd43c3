#include "oddweird/nat.hpp"

#include <cctype>
#include <stdexcept>

#include "oddweird/errors.hpp"

namespace oddweird {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Nat pow10(unsigned exponent) {
  try {
    Nat r = 1;
    for (unsigned i = 0; i < exponent; ++i) r *= 10u;
    return r;
  } catch (const std::overflow_error&) {
    throw OverflowError("10^" + std::to_string(exponent) + " exceeds 256 bits");
  }
}

Nat parse_nat(std::string_view text) {
  const std::string original(text);
  auto bad = [&](const char* why) {
    return InvalidInput("cannot parse '" + original + "' as a natural number: " + why);
  };

  std::string_view mantissa = text;
  unsigned exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    if (!all_digits(exp_text) || exp_text.size() > 4) throw bad("bad exponent");
    exponent = static_cast<unsigned>(std::stoul(std::string(exp_text)));
  }

  std::string_view whole = mantissa;
  std::string_view frac;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    whole = mantissa.substr(0, dot);
    frac = mantissa.substr(dot + 1);
    if (!frac.empty() && !all_digits(frac)) throw bad("bad fraction");
  }
  if (!all_digits(whole)) throw bad("expected digits");

  // Trailing zeros of the fraction do not matter.
  while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
  if (frac.size() > exponent) throw bad("not an integer");

  try {
    Nat digits{std::string(whole) + std::string(frac)};
    return digits * pow10(exponent - static_cast<unsigned>(frac.size()));
  } catch (const std::overflow_error&) {
    throw OverflowError("'" + original + "' exceeds 256 bits");
  } catch (const std::range_error&) {
    throw OverflowError("'" + original + "' exceeds 256 bits");
  }
}

std::string to_string(const Nat& n) { return n.str(); }
std::string to_string(const Int& n) { return n.str(); }

}  // namespace oddweird
