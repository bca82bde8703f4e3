#ifndef DEADZONE_ERRORS_HPP
#define DEADZONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace deadzone {

/// Malformed literal or configuration value.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Phase differences are not pairwise distinct.
class GenericityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Target graph lacks a spanning diverging tree.
class StructuralError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Target graph is not a subgraph of the structural graph.
class ContainmentError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Point too close to a region boundary.
class BoundaryError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Bounded search gave up.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace deadzone

#endif  // DEADZONE_ERRORS_HPP
