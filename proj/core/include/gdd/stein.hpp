#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gdd/distribution.hpp"

namespace gdd {

enum class GrowthKind { polynomial, bounded, sub_exponential };

/// How fast |g| may grow at infinity: polynomial of a degree, bounded, or
/// exp(rate |x|).
struct GrowthClass {
    GrowthKind kind = GrowthKind::bounded;
    double parameter = 0.0;

    static GrowthClass polynomial(double degree) { return {GrowthKind::polynomial, degree}; }
    static GrowthClass bounded() { return {GrowthKind::bounded, 0.0}; }
    static GrowthClass sub_exponential(double rate) { return {GrowthKind::sub_exponential, rate}; }
};

struct TestFunction {
    std::string name;
    std::function<double(double)> g;
    std::function<double(double)> g1;
    std::function<double(double)> g2;
    GrowthClass growth;
};

/// Built-in test functions by name: one, x, x2, x3, sin, cos, gauss (exp(-x^2)),
/// lorentz (1/(1+x^2)). Throws DomainError for other names.
TestFunction named_test_function(std::string_view name);

/// The eight built-in test functions in the order listed above.
std::vector<TestFunction> standard_battery();

/// Throws DomainError when g's growth is too fast for the expectations to exist
/// under the law (exponential rate >= min(beta1, beta2)).
void require_admissible(const GddParams& params, const GrowthClass& growth);

/// f, f', f'' at a point.
struct Derivatives {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Central differences at steps h, h/2, h/4 combined by Richardson extrapolation.
Derivatives finite_difference(const std::function<double(double)>& f, double x, double h);

/// A residual with the sum of the magnitudes of its terms, for relative comparison.
struct Residual {
    double residual = 0.0;
    double scale = 0.0;
    [[nodiscard]] double scaled() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

/// x f'' + (x (beta1 - beta2) + (2 - alpha1 - alpha2)) f' + ((beta1 - beta2 + alpha1 beta2 - alpha2 beta1) - x beta1 beta2) f
Residual density_operator(const GddParams& params, double x, const Derivatives& d);

/// Finite-difference step used at x: 0.02 min(|x|, 1/beta) with beta the rate of
/// the side containing x.
double ode_step(const GddParams& params, double x);

/// The operator above applied to the density, with derivatives by finite
/// differences of the Tricomi route at step ode_step. Throws DomainError at x = 0.
Residual ode_residual(const GddParams& params, double x);

struct SteinResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    /// E of the sum of absolute values of the three terms.
    double term_scale = 0.0;
    bool converged = false;
};

/// E[X g''(X) + (X (beta2 - beta1) + alpha1 + alpha2) g'(X) + (alpha1 beta2 - alpha2 beta1 - X beta1 beta2) g(X)]
/// by quadrature against the density; zero for the gamma difference law.
SteinResult stein_expectation(const GddParams& params, const TestFunction& tf, const quadrature::Options& opts = {});

/// |(1 - it/beta1)(1 + it/beta2) phi'(t) - ((i alpha1/beta1)(1 + it/beta2) - (i alpha2/beta2)(1 - it/beta1)) phi(t)|
/// with phi' from Richardson-refined central differences.
double charfn_ode_check(const GddParams& params, double t);

}  // namespace gdd
