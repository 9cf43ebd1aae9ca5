#pragma once

#include <stdexcept>
#include <string>

namespace cosym {

// Exceptions signal contract violations (bad shapes, bad ids, singular data).
// Numerical checks that merely *fail* produce report records instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error { using Error::Error; };          // rank/dim mismatch
struct VarianceError : Error { using Error::Error; };       // wrong slot variance
struct BoundsError : Error { using Error::Error; };         // index out of range
struct DimensionError : Error { using Error::Error; };      // operation needs a larger dim
struct DomainError : Error { using Error::Error; };         // evaluation outside chart domain
struct NumericError : Error { using Error::Error; };        // non-finite value, zero divisor
struct SingularMatrixError : Error { using Error::Error; }; // inversion breakdown
struct StructureError : Error { using Error::Error; };      // malformed geometric structure
struct ParameterError : Error { using Error::Error; };      // bad scalar/config parameter
struct AdmissibilityError : Error { using Error::Error; };  // deformation covector not admissible
struct SamplingError : Error { using Error::Error; };       // rejection cap exhausted
struct InvalidInputError : Error { using Error::Error; };   // input tensor violates preconditions
struct LookupError : Error { using Error::Error; };         // unknown catalog/suite id
struct UsageError : Error { using Error::Error; };          // bad CLI invocation

} // namespace cosym
