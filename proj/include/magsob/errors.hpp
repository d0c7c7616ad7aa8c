#pragma once

#include <stdexcept>
#include <string>

namespace magsob {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid input: parameter outside its mathematical domain, or an operation
/// called outside its precondition.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// The flux sits on the boundary |alpha| = 1/2, where the phase-plane
/// equation has no interior solution.
class BoundaryFluxError : public DomainError {
 public:
  explicit BoundaryFluxError(const std::string& msg) : DomainError(msg) {}
};

/// An iterative scheme (root refinement, bisection, quadrature doubling,
/// descent) failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// A numerical certificate failed: a quantity that the theory pins down
/// (sign, monotonicity, identity) violated its tolerance.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& msg) : Error(msg) {}
};

}  // namespace magsob
