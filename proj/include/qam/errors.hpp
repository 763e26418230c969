#pragma once

#include <stdexcept>
#include <string>

namespace qam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix shapes or qubit counts do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input symbol is not part of the automaton alphabet.
class SymbolError : public Error {
 public:
  using Error::Error;
};

/// A word enumeration would exceed the configured cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt input was not linearly independent.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated (e.g. non-unitary input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Caller misuse: bad flags, mismatched automata, unknown options.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but violates the physics invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown that should be impossible on valid inputs; reported
/// rather than silently absorbed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qam
