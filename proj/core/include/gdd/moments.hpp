#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gdd/distribution.hpp"

namespace gdd {

enum class MomentRoute {
    recurrence,
    closed_form_1,
    closed_form_2,
    binomial_sum,
    quadrature,
    monte_carlo,
    pv_quadrature,
    pv_analytic_limit,
    closed_form,
    connection_form,
};

std::string_view to_string(MomentRoute route);

/// One moment value with the route that produced it. Quadrature, Monte Carlo and
/// principal-value routes always carry an error estimate; exact routes never do.
struct MomentReport {
    double order = 0.0;
    double value = 0.0;
    MomentRoute route = MomentRoute::recurrence;
    std::optional<double> abs_error_estimate;
};

enum class ClosedForm { first, second };

/// m_0 .. m_kmax from the three-term recurrence
///   b1 b2 m_{k+1} = (k (b2 - b1) + (a1 b2 - a2 b1)) m_k + k (k - 1 + a1 + a2) m_{k-1},  m_0 = 1.
std::vector<MomentReport> moments_recurrence(const GddParams& params, unsigned k_max);

/// m_k as a terminating 2F1 polynomial:
///   first:  (a1)_k / b1^k             2F1(-k, a2; -(a1 + k - 1); -b1/b2)
///   second: (-1)^k (a2)_k / b2^k      2F1(-k, a1; -(a2 + k - 1); -b2/b1)
MomentReport moment_closed_form(const GddParams& params, unsigned k, ClosedForm which);

/// sum_l C(k,l) (-1)^l E[X1^(k-l)] E[X2^l] with E[X^l] = (alpha)_l / beta^l.
MomentReport moment_binomial_oracle(const GddParams& params, unsigned k);

/// m_k = E[X^k] by quadrature against the Tricomi density.
MomentReport moment_quadrature(const GddParams& params, unsigned k, const quadrature::Options& opts = {});

/// E|X|^(b-1) for b > max(0, 1 - alpha1 - alpha2), as two 2F1 functions of
/// argument beta2/(beta1+beta2) and beta1/(beta1+beta2).
MomentReport abs_moment(const GddParams& params, double b);

/// E|X|^(b-1) with the second 2F1 moved to argument beta2/(beta1+beta2) by the
/// z -> 1-z connection formula. For b - 1 an even integer k the first term
/// vanishes and the reduced one-term expression is evaluated instead.
///
/// Throws DomainError when sin(pi (b + alpha2)) is within 1e-8 of zero (b + alpha2
/// an integer) outside the even-integer reduction.
MomentReport abs_moment_connection_form(const GddParams& params, double b);

/// E|X|^(b-1) by quadrature of |x|^(b-1) pdf(x).
MomentReport abs_moment_quadrature(const GddParams& params, double b, const quadrature::Options& opts = {});

/// One half of the absolute moment: E[|X|^(b-1) ; X > 0] (positive side) or
/// E[|X|^(b-1) ; X < 0]. Finite for b > max(0, 1 - alpha1 - alpha2).
double partial_abs_moment(const GddParams& params, double b, bool positive_side);

/// Principal value of E[1/X] from lim_{delta -> 0} of the integral over |x| > delta,
/// evaluated at delta in {1e-2, 1e-3, 1e-4} and Richardson-extrapolated.
MomentReport pv_inverse_moment(const GddParams& params, const quadrature::Options& opts = {});

/// Principal value of E[1/X] as the eps -> 0 limit of
///   E[X^(eps-1); X > 0] - cos(pi eps) E[|X|^(eps-1); X <= 0]
/// at eps in {0.1, 0.05, 0.025} with polynomial extrapolation, using the
/// closed-form half-line moments.
MomentReport pv_inverse_moment_eps_limit(const GddParams& params);

}  // namespace gdd
