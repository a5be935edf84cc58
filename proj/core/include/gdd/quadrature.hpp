#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace gdd::quadrature {

using Integrand = std::function<double(double)>;

struct Finite {
    double lo;
    double hi;
};

/// [lo, +inf), mapped by t = lo + scale * u / (1 - u).
struct SemiInfinite {
    double lo;
    double scale = 1.0;
};

/// (-inf, hi], mapped by t = hi - scale * u / (1 - u).
struct SemiInfiniteBelow {
    double hi;
    double scale = 1.0;
};

/// (-inf, +inf), mapped by t = scale * u / (1 - u^2).
struct FullLine {
    double scale = 1.0;
};

using Interval = std::variant<Finite, SemiInfinite, SemiInfiniteBelow, FullLine>;

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct Task {
    Integrand integrand;
    Interval interval = FullLine{};
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    /// Characteristic angular frequency of an oscillating integrand, if any.
    std::optional<double> oscillatory_hint;
    /// Integrable singularity at the lower/upper end of the (mapped) interval.
    /// Adds one forced bisection next to that endpoint before adaptive refinement.
    bool singular_lo = false;
    bool singular_hi = false;

    Task() = default;
    Task(Integrand f, Interval iv, const Options& opts = {})
        : integrand(std::move(f)),
          interval(iv),
          rel_tol(opts.rel_tol),
          abs_tol(opts.abs_tol),
          max_subdivisions(opts.max_subdivisions) {}
};

struct Result {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions_used = 0;
    bool converged = false;
};

/// Raised when the integrand returns a non-finite value at a quadrature node.
class NonFiniteIntegrand : public std::runtime_error {
public:
    NonFiniteIntegrand(double abscissa, double value);
    [[nodiscard]] double abscissa() const { return abscissa_; }

private:
    double abscissa_;
};

/// Validates tolerances and budget; throws gdd::DomainError on bad input.
void validate(const Task& task);

/// Globally adaptive Gauss-Kronrod (7/15) integration with bisection of the
/// interval carrying the largest error estimate.
Result integrate(const Task& task);

/// Integrates task.integrand, which must oscillate like {cos, sin}(omega t),
/// over a SemiInfinite or FullLine interval. The line is cut into half-period
/// lobes of width pi/|omega|, each lobe is integrated adaptively and the lobe
/// series is summed with the Euler transform. omega == 0 falls back to integrate().
Result integrate_oscillatory(const Task& task, double omega);

}  // namespace gdd::quadrature
