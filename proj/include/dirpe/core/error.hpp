// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dirpe {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI's JSON error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message) : Error("InvalidArgument", message) {}
};

class InvalidGraph : public Error {
 public:
  explicit InvalidGraph(const std::string& message) : Error("InvalidGraph", message) {}
};

class CyclicGraph : public Error {
 public:
  explicit CyclicGraph(const std::string& message) : Error("CyclicGraph", message) {}
};

class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& message) : Error("TooLarge", message) {}
};

/// Normalized Laplacian requested for a graph with a zero-degree node.
class IsolatedNode : public Error {
 public:
  explicit IsolatedNode(const std::string& message) : Error("IsolatedNode", message) {}
};

/// Exhaustive 0-1 check requested for more wires than supported.
class WireCountTooLarge : public Error {
 public:
  explicit WireCountTooLarge(const std::string& message) : Error("WireCountTooLarge", message) {}
};

/// A randomized generator exhausted its retry budget.
class GenerationFailed : public Error {
 public:
  explicit GenerationFailed(const std::string& message) : Error("GenerationFailed", message) {}
};

/// A numerical invariant (Hermiticity, convergence of a series) failed.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message) : Error("NumericalError", message) {}
};

/// Iterative eigensolver did not reach the residual tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& message, double max_residual, int iterations)
      : Error("SolverError", message), max_residual_(max_residual), iterations_(iterations) {}
  double max_residual() const noexcept { return max_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double max_residual_;
  int iterations_;
};

/// Mini-language source rejected by the lexer or parser. Line and column
/// are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : Error("SyntaxError", std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A variable is read on some path before any assignment reaches it.
class UseBeforeAssignment : public Error {
 public:
  explicit UseBeforeAssignment(const std::string& message) : Error("UseBeforeAssignment", message) {}
};

}  // namespace dirpe
