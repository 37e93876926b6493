#pragma once

#include <stdexcept>
#include <string>

namespace carent {

// Base of all library errors. Subclasses name the failed contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lattice or matrix size outside the supported range.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent arguments (bad regions, mismatched states).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// An operation's mathematical premise does not hold for its input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Not enough room in the partner region for the requested construction.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A density that fails positivity.
class NotAStateError : public Error {
 public:
  using Error::Error;
};

// Product extension requested for two noneven factors.
class UnsupportedExtensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace carent
