#pragma once

#include <stdexcept>
#include <string>

namespace lacsum {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed caller input: duplicate or non-positive frequencies, bad flags.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A computation that would leave the 64-bit frequency range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Quadrature panel budget exceeded; the caller should use Monte Carlo.
class FrequencyTooLarge : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class SearchSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace lacsum
