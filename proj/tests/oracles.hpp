#pragma once

#include <cmath>

#include "gdd/quadrature.hpp"
#include "gdd/specfun.hpp"

// Integral-representation oracles evaluated by direct quadrature.
namespace gdd::testing {

// U(a,b,z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt, a > 0.
// On [0,1] substitute t = u^{1/a} to remove the endpoint singularity.
inline double tricomi_integral(double a, double b, double z) {
    quadrature::Options opts{1e-13, 1e-300, 4000};
    auto head = quadrature::integrate(quadrature::Task(
        [=](double u) {
            const double t = std::pow(u, 1.0 / a);
            return std::exp(-z * t) * std::pow(1.0 + t, b - a - 1.0) / a;
        },
        quadrature::Finite{0.0, 1.0}, opts));
    auto tail = quadrature::integrate(quadrature::Task(
        [=](double t) { return std::exp(-z * t) * std::pow(t, a - 1.0) * std::pow(1.0 + t, b - a - 1.0); },
        quadrature::SemiInfinite{1.0, 1.0 / z}, opts));
    return (head.value + tail.value) * std::exp(-specfun::log_gamma(a));
}

// K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt
inline double bessel_integral(double nu, double z) {
    auto r = quadrature::integrate(quadrature::Task(
        [=](double t) {
            const double c = z * std::cosh(t);
            return c > 745.0 ? 0.0 : std::exp(-c) * std::cosh(nu * t);
        },
        quadrature::SemiInfinite{0.0, 1.0}, quadrature::Options{1e-13, 1e-300, 4000}));
    return r.value;
}

// Density of X1 - X2 at the origin: int_0^inf g1(y) g2(y) dy for the two gamma densities.
inline double gamma_overlap_integral(double a1, double b1, double a2, double b2) {
    const double log_norm = a1 * std::log(b1) + a2 * std::log(b2) - specfun::log_gamma(a1) - specfun::log_gamma(a2);
    quadrature::Task task(
        [=](double y) {
            return y == 0.0 ? 0.0 : std::exp(log_norm + (a1 + a2 - 2.0) * std::log(y) - (b1 + b2) * y);
        },
        quadrature::SemiInfinite{0.0, 1.0 / (b1 + b2)}, quadrature::Options{1e-12, 1e-300, 4000});
    task.singular_lo = a1 + a2 < 2.0;
    return quadrature::integrate(task).value;
}

}  // namespace gdd::testing
