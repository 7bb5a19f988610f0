#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter outside the admissible set of the operation (gamma <= 0 etc.).
struct InvalidOrder : Error {
    using Error::Error;
};

// Argument outside the supported evaluation domain.
struct DomainError : Error {
    using Error::Error;
};

// An iterative evaluation failed to reach its tolerance.
struct NonConvergent : Error {
    using Error::Error;
};

// A finite-difference step shrank below representable resolution.
struct StepUnderflow : Error {
    using Error::Error;
};

// Requested quantity lies outside the range where the underlying
// estimate is valid.
struct OutOfTheoremRange : Error {
    using Error::Error;
};

// Supplied eigenfunction family failed the Gram-matrix identity.
struct NotOrthonormal : Error {
    using Error::Error;
};

// Quadrature rule has too few nodes for the requested mode content.
struct QuadratureUnderResolved : Error {
    using Error::Error;
};

// Adaptive quadrature stalled above its target tolerance.
struct QuadratureFailure : Error {
    using Error::Error;
};

// Richardson table stopped contracting.
struct ExtrapolationDivergence : Error {
    using Error::Error;
};

// Weighted integral has a non-integrable endpoint exponent.
struct NonIntegrable : Error {
    using Error::Error;
};

// Uniform-grid operation received a non-uniform grid.
struct GridNotUniform : Error {
    using Error::Error;
};

// Time step so small that kernel weights degenerate.
struct SingularStep : Error {
    using Error::Error;
};

// Least-squares order fit rejected (non-monotone errors or zero spread).
struct DegenerateFit : Error {
    using Error::Error;
};

// Index or parameter outside a container or tabulated range.
struct OutOfRange : Error {
    using Error::Error;
};

// Config file could not be parsed; message carries the line number.
struct ParseError : Error {
    using Error::Error;
};

// Config parsed but violates a precondition; message names it.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace fracwave
