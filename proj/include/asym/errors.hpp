#pragma once

#include <stdexcept>
#include <string>

namespace asym {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteError : Error {
    using Error::Error;
};
struct NotHermitianError : Error {
    using Error::Error;
};
struct NotPsdError : Error {
    using Error::Error;
};
struct ShapeMismatchError : Error {
    using Error::Error;
};
struct DimMismatchError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct NotNormalizedError : Error {
    using Error::Error;
};
struct TraceNotOneError : Error {
    using Error::Error;
};

// Thrown when a channel application loses more trace than the channel declared.
struct TraceLossError : Error {
    TraceLossError(const std::string& what, double amount_) : Error(what), amount(amount_) {}
    double amount;
};

// Thrown when a constructed Kraus list fails the trace-preservation check.
struct NotTracePreservingError : Error {
    NotTracePreservingError(const std::string& what, double residual_)
        : Error(what), residual(residual_) {}
    double residual;
};

struct WrongVariantError : Error {
    using Error::Error;
};
struct OutOfRangeError : Error {
    using Error::Error;
};
struct GuardBandError : Error {
    using Error::Error;
};
struct EmptyTrajectoryError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct FileWriteError : Error {
    using Error::Error;
};

}  // namespace asym
