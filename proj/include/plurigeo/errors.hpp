#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plurigeo {

// Root of everything thrown by the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or grammatical failure; offset is the byte position in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Numerical evaluation failure: pole hit or overflow to non-finite.
class EvalError : public Error {
  using Error::Error;
};

// Bad metric data or inadmissible evaluation point.
class MetricError : public Error {
  using Error::Error;
};

// Rejection sampling could not produce an admissible point.
class SamplerError : public Error {
  using Error::Error;
};

// Inconsistent run configuration or unreadable input files.
class ConfigError : public Error {
  using Error::Error;
};

}  // namespace plurigeo
