#pragma once

#include <stdexcept>
#include <string>

namespace kitaev {

/// Raised when an argument lies outside the domain of an operation
/// (unphysical correlators, couplings that are all zero, jz off the line).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised by the O(L^4) reference correlator when L exceeds its size guard.
class SizeGuardError : public std::length_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::length_error(what) {}
};

/// Raised when a numerical procedure cannot produce a result
/// (eigensolver failure, degenerate fit input).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kitaev
