#pragma once

#include <stdexcept>
#include <string>

namespace walkspec {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed external input (files, graph6 text, CLI values).
class InputError : public Error {
 public:
  using Error::Error;
};

// Precondition violated by the caller: shape mismatch, non-prime modulus, etc.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A configured search or factorization budget was exhausted.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

// A mathematical invariant that must hold was observed to fail. Either the
// code has a bug or a theorem has been falsified on this instance.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace walkspec
