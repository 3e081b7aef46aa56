#pragma once

#include <stdexcept>
#include <string>

namespace jlab {

/// Bad input: schema violations, unmet preconditions, out-of-domain evaluations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

/// A function was evaluated outside its domain, or produced a non-finite value.
class DomainError : public InputError {
 public:
  DomainError(const std::string& what, double point) : InputError(what), point_(point) {}
  double point() const noexcept { return point_; }

 private:
  double point_;
};

/// JSON text that does not parse.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : InputError(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Well-formed JSON that violates the job schema. `path` is a JSON pointer-ish location.
class SchemaError : public InputError {
 public:
  SchemaError(const std::string& path, const std::string& expectation)
      : InputError(path + ": " + expectation), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Quadrature hit its refinement limit before meeting the requested tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double best_value, double error_estimate)
      : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}
  double best_value() const noexcept { return best_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_value_;
  double error_estimate_;
};

/// A derived object (e.g. the convexification g) failed its own validity check.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, double worst_point)
      : std::runtime_error(what), worst_point_(worst_point) {}
  double worst_point() const noexcept { return worst_point_; }

 private:
  double worst_point_;
};

}  // namespace jlab
