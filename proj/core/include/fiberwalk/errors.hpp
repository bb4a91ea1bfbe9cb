#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fiberwalk {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched vector/matrix dimensions or violated call contracts.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid model construction (e.g. the all-ones vector is not in the
// row span of a design matrix) or malformed domain objects.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Binomial completion exceeded a configured resource cap. Never a silent
// truncation: the offending cap is named in the message.
class CompletionOverflow : public Error {
 public:
  CompletionOverflow(const std::string& what, std::size_t cap)
      : Error(what), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

// Fiber enumeration hit its point cap or the fiber cannot be bounded.
// Distinct from a negative verification result.
class FiberCapError : public Error {
 public:
  FiberCapError(const std::string& what, std::size_t cap)
      : Error(what), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

// Invalid run configuration (empty basis, steps < burn-in, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A fit requested where none is usable (e.g. chi-square on a fit with
// an expected count of zero where the observed count is positive).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Input file could not be parsed; carries a 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fiberwalk
