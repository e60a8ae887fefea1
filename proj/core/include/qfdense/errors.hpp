#pragma once

#include <stdexcept>
#include <string>

namespace qfdense {

/// Root of every library error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tracked error bound grew past the tolerance the caller asked for.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Bad input: out-of-range parameters, malformed literals, degenerate data.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidForm : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The continued fraction terminated: the number is rational.
class RationalDetected : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Every candidate direction produced a rational coefficient.
class AllRational : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The leading coefficient cannot be distinguished from zero.
class AlphaZero : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Brute-force enumeration was asked to exceed its hard cap.
class CapExceeded : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace qfdense
