#pragma once

#include <stdexcept>
#include <string>

namespace ppxfuse {

// Base class for every error raised by the library. Input-driven failures
// (bad files, bad flags, incompatible data) derive from InputError so the CLI
// can map them to exit code 2; anything else is an internal failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

// Numeric precondition violated (empty input, non-finite value, P < 1, ...).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// Shapes or label spaces disagree.
class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

// Bundles or matrices cannot be put into a common row order.
class AlignmentError : public InputError {
 public:
  using InputError::InputError;
};

// A required gold label is missing for some example.
class CoverageError : public InputError {
 public:
  using InputError::InputError;
};

// A record violates a type invariant (duplicate id, unknown label, ...).
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

// Malformed JSON / JSONL text.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// Manifest disagrees with its rows.
class ManifestError : public InputError {
 public:
  using InputError::InputError;
};

// Bad configuration values (caps, simulator specs, weights files).
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

// Weights that cannot be normalized (all zero).
class DegenerateWeightsError : public InputError {
 public:
  using InputError::InputError;
};

// Filesystem failure; carries the OS message.
class IoError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace ppxfuse
