#pragma once

#include <stdexcept>
#include <string>

namespace urllc {

/// Raised when an argument lies outside the domain of a formula
/// (e.g. a probability outside (0,1), or c_L*z >= 1 for the corrected bound).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a result is not representable as a finite double.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace urllc
