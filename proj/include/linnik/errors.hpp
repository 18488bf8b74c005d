#pragma once

#include <stdexcept>
#include <string>

namespace linnik {

/// Argument outside the mathematical domain of an operation (even modulus,
/// K below the floor, lambda >= 1 where no finite K exists, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation would exceed a configured memory or enumeration budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside a representable or precomputed range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace linnik
