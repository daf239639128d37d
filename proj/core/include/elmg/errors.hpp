#pragma once

#include <stdexcept>
#include <string>

namespace elmg {

/// Base class for all errors thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation
/// (invalid spin, phase-validity inequality violated, QPT line hit, ...).
struct domain_error : error {
  using error::error;
};

/// Mismatched operands (wrong dimensions, operators built for another j).
struct contract_error : error {
  using error::error;
};

/// Request exceeds a resource guard (matrix dimension cap).
struct resource_error : error {
  using error::error;
};

/// Numerical failure (eigensolver non-convergence, shooting failure,
/// fit window without valid data).
struct numeric_error : error {
  using error::error;
};

/// Basis truncation insufficient for the requested tolerance.
struct truncation_error : numeric_error {
  using numeric_error::numeric_error;
};

}  // namespace elmg
