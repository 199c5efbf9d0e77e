#ifndef GENPOW_ERRORS_HPP
#define GENPOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace genpow {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Grid fails a structural requirement (size, monotonicity, uniform spacing).
class GridError : public Error {
  public:
    using Error::Error;
};

/// Two objects built on different grids were combined.
class GridMismatch : public Error {
  public:
    using Error::Error;
};

/// A function playing the role of Phi (or a ground state) vanishes on the grid.
class NonvanishingViolation : public Error {
  public:
    NonvanishingViolation(const std::string& what_function, std::size_t node, double abs_value)
        : Error(what_function + " vanishes at node " + std::to_string(node) + " (|value| = " +
                std::to_string(abs_value) + ")"),
          node_index(node) {}
    std::size_t node_index;
};

/// A power table does not hold enough rows for the requested operation.
class InsufficientOrder : public Error {
  public:
    InsufficientOrder(std::size_t required, std::size_t available)
        : Error("table order " + std::to_string(available) + " insufficient, need " +
                std::to_string(required)),
          required_order(required) {}
    std::size_t required_order;
};

/// The requested truncation tolerance cannot be certified in double precision.
class ToleranceTooTight : public Error {
  public:
    using Error::Error;
};

/// Derivative/order combination outside the parity conditions of the power rules.
class ParityMismatch : public Error {
  public:
    using Error::Error;
};

/// Operation requires a real-valued Phi.
class RealPhiRequired : public Error {
  public:
    using Error::Error;
};

/// Operation requires Phi real and positive on the whole grid.
class PositivePhiRequired : public Error {
  public:
    using Error::Error;
};

/// Numerical Wronskian restricted to small orders.
class OrderCapExceeded : public Error {
  public:
    using Error::Error;
};

/// Determinant-based coefficient extraction hit an ill-conditioned system.
class ConditioningFailure : public Error {
  public:
    using Error::Error;
};

/// The particular solution u0 (or psi0) vanishes on the grid.
class GroundStateVanishes : public Error {
  public:
    using Error::Error;
};

/// Supplied psi0 does not solve the zero-energy equation for the given potential.
class NotAParticularSolution : public Error {
  public:
    using Error::Error;
};

/// Series truncation K is too small for the requested spectral parameter range.
class TruncationTooSmall : public Error {
  public:
    TruncationTooSmall(std::size_t needed, const std::string& detail)
        : Error("series truncation too small, need K >= " + std::to_string(needed) + " (" +
                detail + ")"),
          needed_truncation(needed) {}
    std::size_t needed_truncation;
};

/// Eigenvalue scan found no sign changes in the requested range.
class NoRootsInRange : public Error {
  public:
    using Error::Error;
};

/// Kernel power with n = 0 requested (the composition identity is a Dirac delta).
class IdentityNotMaterializable : public Error {
  public:
    using Error::Error;
};

/// Neumann series terms kept growing; the kernel construction is suspect.
class DivergenceSuspected : public Error {
  public:
    using Error::Error;
};

/// Structured configuration is invalid.
class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace genpow

#endif
