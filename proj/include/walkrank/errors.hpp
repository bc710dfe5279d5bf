#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace walkrank {

using NodeId = std::size_t;

/// Base of every error raised by the library.
///
/// Two broad families exist: input errors (malformed files, parameters out of
/// range, structurally unsuitable graphs) and numerical failures (a walk that
/// does not converge, a system that cannot be solved because some walkers are
/// trapped). The CLI maps them onto exit codes 2 and 3.
class Error : public std::runtime_error {
 public:
  enum class Kind { input, numerical };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  /// 1-based line number of the offending input line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error(Kind::input, message) {}
};

class SizeError : public Error {
 public:
  explicit SizeError(const std::string& message) : Error(Kind::input, message) {}
};

class DanglingNodeError : public Error {
 public:
  explicit DanglingNodeError(std::vector<NodeId> nodes);

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }

 private:
  std::vector<NodeId> nodes_;
};

class ConnectivityError : public Error {
 public:
  explicit ConnectivityError(const std::string& message) : Error(Kind::numerical, message) {}
};

class AcyclicityError : public Error {
 public:
  explicit AcyclicityError(const std::string& message) : Error(Kind::input, message) {}
};

/// Power iteration exhausted its budget. Carries the last iterate so callers
/// can inspect oscillations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& algorithm, std::size_t iterations, double residual,
                   std::vector<double> last_iterate);

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::size_t iterations_;
  double residual_;
  std::vector<double> last_iterate_;
};

/// Some transient nodes cannot reach any absorbing node.
class ReachabilityError : public Error {
 public:
  explicit ReachabilityError(std::vector<NodeId> trapped);

  const std::vector<NodeId>& trapped() const noexcept { return trapped_; }

 private:
  std::vector<NodeId> trapped_;
};

class InsufficientSamplesError : public Error {
 public:
  InsufficientSamplesError(std::vector<NodeId> nodes, std::size_t min_returns);

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }

 private:
  std::vector<NodeId> nodes_;
};

class ColdStartError : public Error {
 public:
  explicit ColdStartError(NodeId user);
};

}  // namespace walkrank
