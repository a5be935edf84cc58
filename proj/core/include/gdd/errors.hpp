#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace gdd {

/// Thrown when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The requested value is infinite (e.g. a density at the origin when alpha1 + alpha2 <= 1).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Result of a special-function or derived evaluation.
///
/// `converged == true` guarantees a finite, non-negative error estimate.
/// Poles are reported by throwing PoleError, never through this struct.
struct SpecialValue {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    bool converged = true;

    [[nodiscard]] double rel_error_estimate() const {
        return value == 0.0 ? abs_error_estimate : abs_error_estimate / std::abs(value);
    }
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw DomainError(message);
    }
}

inline void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be finite");
    }
}

}  // namespace detail
}  // namespace gdd
