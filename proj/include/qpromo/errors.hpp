#pragma once

#include <stdexcept>

namespace qpromo {

// Error taxonomy shared across the library. Everything derives from
// std::runtime_error so callers that do not care about the distinction can
// catch a single base type.

// Mismatched vector/matrix sizes, bitstring length vs. model size, etc.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range or nonsensical argument values (negative penalty strength,
// zero grid points, ...).
class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem size exceeds what an exhaustive or statevector method can handle.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad experiment configuration (unknown key, missing required field).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (JSON/CSV that does not parse or lacks a field).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates a domain invariant (negative
// cannibalization entry, asymmetric matrix, duplicate constraint label).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative method failed to meet its accuracy contract.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpromo
