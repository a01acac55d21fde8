#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aqubo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed construction request: unknown variable id, wrong gadget arity,
/// length mismatch between a vector and a model.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function, e.g. r(k) for k < 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for an exact method.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Instance generator could not satisfy its request.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Text input that does not follow its format. Line and field are 1-based;
/// field 0 means the whole line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t field, const std::string& what)
      : Error("line " + std::to_string(line) + ", field " +
              std::to_string(field) + ": " + what),
        line_(line),
        field_(field) {}

  std::size_t line() const { return line_; }
  std::size_t field() const { return field_; }

 private:
  std::size_t line_;
  std::size_t field_;
};

}  // namespace aqubo
