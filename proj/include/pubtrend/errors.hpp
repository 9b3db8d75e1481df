#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pubtrend {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad hyperparameter or argument value.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-range input data handed to an operation.
class InputError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(std::string column)
      : Error("missing mapped column '" + column + "'"), column_(std::move(column)) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class RowError : public Error {
 public:
  RowError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A pipeline step produced nothing usable (e.g. an empty vocabulary).
class PipelineError : public Error {
 public:
  using Error::Error;
};

// Internal tables disagree with each other.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// A quantity is mathematically undefined for the given input.
class UndefinedError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : Error(what + " (at step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double achieved, const std::string& what)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class DependencyError : public Error {
 public:
  DependencyError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

// Any failure inside a pipeline stage, prefixed with the stage name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace pubtrend
