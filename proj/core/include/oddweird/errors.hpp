#pragma once

#include <stdexcept>
#include <string>

namespace oddweird {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad factor list, unparsable number or factorization.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class NoPredecessor : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// next_prime would have to return a prime above the configured hard cap.
class PrimeRangeExhausted : public Error {
 public:
  using Error::Error;
};

class UnsupportedBound : public Error {
 public:
  using Error::Error;
};

// The subset-sum node budget ran out before the instance was decided.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace oddweird
