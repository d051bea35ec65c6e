#pragma once

#include <stdexcept>

namespace avn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// More qubits than the dense representation supports.
struct CapacityError : Error {
    using Error::Error;
};

// Operator/state qubit counts disagree.
struct DimensionError : Error {
    using Error::Error;
};

// Invalid argument values (fidelity out of range, bad weights, bad labels).
struct DomainError : Error {
    using Error::Error;
};

// A numerical integrity check failed (imaginary residue, lost normalization).
struct NumericError : Error {
    using Error::Error;
};

// Conditioning on a measurement outcome that has no support.
struct NoSupportError : Error {
    using Error::Error;
};

// A sampling run ended with no accepted shots.
struct InsufficientStatsError : Error {
    using Error::Error;
};

// An internal consistency check that quantum mechanics guarantees has failed.
struct PhysicsViolationError : Error {
    using Error::Error;
};

}  // namespace avn
