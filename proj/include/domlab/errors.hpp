#pragma once

#include <stdexcept>
#include <string>

namespace domlab {

/// Operands do not share the same block structure.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation that needs a real (J-fixed) vector was handed one with a
/// Hermiticity defect above tolerance.
class NotRealError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A standing hypothesis of a criterion (realness, positivity, commutativity,
/// accretivity, ...) does not hold for the given input.
class HypothesisError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace domlab
