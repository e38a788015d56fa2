#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcsvm {

/// Broad failure category; the CLI maps each one to its own exit code.
enum class ErrorKind { parse, config, training };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed LIBSVM input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::parse, line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A label outside {+1, -1} (or {0, 1} when remapping is enabled).
class LabelError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

/// A partitioner cannot satisfy its preconditions (too few samples or too few of one class).
class PartitionError : public Error {
 public:
  explicit PartitionError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& what) : Error(ErrorKind::training, what) {}
};

}  // namespace bcsvm
