#pragma once

#include <stdexcept>
#include <string>

namespace cob3 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed term text. Line and column are 1-based.
struct SyntaxError : Error {
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct TypeError : Error {
  using Error::Error;
};

struct ArityMismatch : Error {
  using Error::Error;
};

struct UnknownPrime : Error {
  explicit UnknownPrime(const std::string& label)
      : Error("unknown prime label '" + label + "'"), label(label) {}
  std::string label;
};

struct ShapeError : Error {
  using Error::Error;
};

struct DegeneratePairing : Error {
  using Error::Error;
};

struct NotScalarOnBlock : Error {
  NotScalarOnBlock(std::size_t block, const std::string& what)
      : Error("operator '" + what + "' is not scalar on block " +
              std::to_string(block)),
        block(block),
        what(what) {}
  std::size_t block;
  std::string what;
};

struct NoMatch : Error {
  using Error::Error;
};

struct UnknownRuleSet : Error {
  using Error::Error;
};

}  // namespace cob3
