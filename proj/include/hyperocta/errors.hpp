#pragma once

#include <stdexcept>
#include <string>

namespace hyperocta {

// Precondition violation on a public operation (bad sizes, ranges,
// mismatched contexts).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// The input to a decomposition was not a relation: the evaluated sum is a
// nonzero polynomial.  what() names a monomial with nonzero coefficient.
class NotARelation : public std::runtime_error {
 public:
  explicit NotARelation(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed.  Signals an implementation bug (or a
// falsified theorem); never "repaired" silently.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what)
      : std::logic_error(what) {}
};

// A model table failed one of its axioms.  what() names the axiom and the
// offending basis indices.
class ModelValidationError : public std::runtime_error {
 public:
  explicit ModelValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

// A cooperative cancellation token was triggered mid-computation.
class OperationCancelled : public std::runtime_error {
 public:
  OperationCancelled() : std::runtime_error("operation cancelled") {}
};

}  // namespace hyperocta
