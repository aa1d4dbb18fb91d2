#pragma once

#include <stdexcept>
#include <string>

namespace qkdprobe {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched or unsupported Hilbert-space dimensions.
struct InvalidDimension : Error {
    using Error::Error;
};

/// eigh() received a matrix that is not Hermitian within tolerance.
struct NotHermitian : Error {
    using Error::Error;
};

/// A parameter lies outside its admissible range.
struct InvalidParams : Error {
    using Error::Error;
};

/// The measurement angle of the closed-form POVM is undefined
/// (both angle components vanish; Eve's conditional states coincide).
struct DegenerateAngle : Error {
    using Error::Error;
};

/// An operator fails the density-operator requirements
/// (Hermitian, positive semidefinite, unit trace), or priors are invalid.
struct InvalidState : Error {
    using Error::Error;
};

/// A conditional error rate is undefined because the conditioning
/// probability vanishes.
struct DegenerateConditioning : Error {
    using Error::Error;
};

/// A grid search found no parameter point satisfying its constraint.
struct NoFeasiblePoint : Error {
    using Error::Error;
};

} // namespace qkdprobe
