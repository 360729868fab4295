#pragma once
#include <stdexcept>
#include <string>

namespace tricomi {

// Bad arguments or configuration. CLI exit code 1.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the numerically supported window.
struct RangeError : DomainError {
    using DomainError::DomainError;
};

// Kernel evaluated before its constants were fitted.
struct UncalibratedError : DomainError {
    using DomainError::DomainError;
};

// Data reaches the edge of the periodic box, so the box no longer stands in for R^n.
struct SupportViolation : DomainError {
    using DomainError::DomainError;
};

// Something went wrong in the numerics. CLI exit code 2.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IterationDiverged : NumericalFailure {
    IterationDiverged(const std::string& what, int last_finite)
        : NumericalFailure(what), last_finite_k(last_finite) {}
    int last_finite_k;
};

struct BracketError : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

}  // namespace tricomi
