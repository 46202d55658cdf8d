#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsbm {

/**
 * Base class for all errors raised by this library.
 */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Malformed input text (edge list, partition, or LFR file). */
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  /** 1-based line number the error was detected on, 0 if not applicable. */
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/** The same undirected edge appeared more than once. */
class DuplicateEdgeError : public ParseError {
 public:
  using ParseError::ParseError;
};

/** An edge joins a vertex to itself. */
class SelfLoopError : public ParseError {
 public:
  using ParseError::ParseError;
};

/** A vertex index lies outside [0, n). */
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/** A partition file does not assign a label to every vertex 0..max. */
class IncompletePartitionError : public ParseError {
 public:
  using ParseError::ParseError;
};

/** A partition file assigns two labels to the same vertex. */
class DuplicateAssignmentError : public ParseError {
 public:
  using ParseError::ParseError;
};

/** An LFR network file lists an edge in one direction only. */
class AsymmetricEdgeError : public ParseError {
 public:
  using ParseError::ParseError;
};

/** An LFR network file lists an edge twice with different weights. */
class WeightMismatchError : public ParseError {
 public:
  using ParseError::ParseError;
};

/** A negative edge weight reached an algorithm that requires nonnegative weights. */
class NegativeWeightError : public Error {
 public:
  using Error::Error;
};

/** Two inputs that must describe the same vertex set disagree on size. */
class SizeMismatchError : public Error {
 public:
  using Error::Error;
};

/** Internal bookkeeping no longer matches a from-scratch recomputation. */
class InconsistentStateError : public Error {
 public:
  using Error::Error;
};

/**
 * The random-reference baseline used by rrnmi is itself indistinguishable
 * from noise, so the ratio is undefined.
 */
class DegenerateReferenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gsbm
