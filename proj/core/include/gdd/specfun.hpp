#pragma once

#include "gdd/errors.hpp"

namespace gdd::specfun {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln|Gamma(x)| and the sign of Gamma(x) for any real x that is not a pole.
struct SignedLog {
    double log_abs;
    int sign;
};
SignedLog log_gamma_signed(double x);

/// 1 / Gamma(x), zero at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
double pochhammer(double a, unsigned n);

/// True when x is a non-positive integer (0, -1, -2, ...).
bool is_non_positive_integer(double x);

/// Gauss hypergeometric function 2F1(a, b; c; z).
///
/// Terminating series (a or b a non-positive integer) are summed exactly for
/// any z. Otherwise |z| < 1 is required: z < 0 goes through the Pfaff
/// transformation to z/(z-1), 0 <= z <= 0.9 is summed directly and z > 0.9 uses
/// the z -> 1-z connection formula when c-a-b is not close to an integer.
SpecialValue gauss_2f1(double a, double b, double c, double z);

/// Limit of 2F1(a, b + e; c + e; z) as e -> 0 when both b and c are
/// non-positive integers with c <= b. Factors that vanish together in
/// numerator and denominator are cancelled instead of truncating the series.
/// Coincides with gauss_2f1 whenever b and c are not both such integers.
SpecialValue gauss_2f1_coupled_limit(double a, double b, double c, double z);

/// Kummer's confluent hypergeometric function M(a, b; z) = 1F1(a; b; z).
SpecialValue kummer_m(double a, double b, double z);

/// Tricomi's confluent hypergeometric function U(a, b; z), z >= 0.
///
/// Small z: the two-M connection formula, with an even Richardson limit in b
/// when b is within `kIntegerBGap` of an integer. Large z: the asymptotic
/// expansion when it reaches full precision, otherwise the Laplace integral
/// representation after a Kummer transformation to a positive first parameter.
SpecialValue tricomi_u(double a, double b, double z);

inline constexpr double kIntegerBGap = 1e-4;

/// Modified Bessel function of the second kind K_nu(z), z > 0.
SpecialValue bessel_k(double nu, double z);

/// e^z K_nu(z), free of underflow for large z.
SpecialValue bessel_k_scaled(double nu, double z);

}  // namespace gdd::specfun
