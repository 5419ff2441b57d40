#pragma once

#include <stdexcept>
#include <string>

namespace holocurve {

/// Category of a library failure. The CLI maps these onto exit codes.
enum class ErrorKind {
  Parameter,   // argument outside its documented range
  Domain,      // a point left the domain of a field or curve
  Degenerate,  // a certified radius collapsed to zero
  Evaluation,  // non-finite value from an integrand
  Parse,       // field source text rejected
  Convergence  // an iteration ran out of budget
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

class DomainError : public Error {
 public:
  /// `t` and `distance` locate the offending point: distance is how far the
  /// state lies outside the ball (or interval) it was supposed to stay in.
  DomainError(const std::string& what, double t, double distance)
      : Error(ErrorKind::Domain, what), t_(t), distance_(distance) {}
  double t() const noexcept { return t_; }
  double distance() const noexcept { return distance_; }

 private:
  double t_;
  double distance_;
};

class DegenerateDomainError : public Error {
 public:
  explicit DegenerateDomainError(const std::string& what) : Error(ErrorKind::Degenerate, what) {}
};

class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::size_t node) : Error(ErrorKind::Evaluation, what), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations, double last_ratio)
      : Error(ErrorKind::Convergence, what), iterations_(iterations), last_ratio_(last_ratio) {}
  std::size_t iterations() const noexcept { return iterations_; }
  double last_ratio() const noexcept { return last_ratio_; }

 private:
  std::size_t iterations_;
  double last_ratio_;
};

}  // namespace holocurve
