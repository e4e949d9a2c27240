#ifndef LIECR_ERRORS_HPP
#define LIECR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace liecr {

/// Malformed or mismatched input (shapes, dimensions, parse failures).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation was called on data that violates its documented precondition.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

/// A transversality check was asked for on the wrong parity case.
class WrongConditionError : public PreconditionError {
 public:
  explicit WrongConditionError(const std::string& what) : PreconditionError(what) {}
};

/// The algebra has no built-in data for the request (e.g. no designated torus).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// Floating point structure could not be resolved within tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace liecr

#endif  // LIECR_ERRORS_HPP
