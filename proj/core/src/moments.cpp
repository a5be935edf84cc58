#include "gdd/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "gdd/specfun.hpp"

namespace gdd {

namespace {

using specfun::log_gamma;

double binomial(unsigned n, unsigned k) {
    double c = 1.0;
    for (unsigned i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

double gamma_moment(double alpha, double beta, unsigned l) {
    return specfun::pochhammer(alpha, l) / std::pow(beta, static_cast<double>(l));
}

void require_abs_order(const GddParams& p, double b) {
    detail::require_finite(b, "b");
    detail::require(b > std::max(0.0, 1.0 - p.shape_sum()),
                    "absolute moment requires b > max(0, 1 - alpha1 - alpha2)");
}

// ln of beta1^a1 beta2^a2 / (beta1+beta2)^(a1+a2+b-1)
double log_base(const GddParams& p, double b) {
    return p.alpha1() * std::log(p.beta1()) + p.alpha2() * std::log(p.beta2()) -
           (p.shape_sum() + b - 1.0) * std::log(p.beta1() + p.beta2());
}

// E[X^(b-1); X > 0] for the law p; the X < 0 half is the same with p swapped.
SpecialValue positive_half(const GddParams& p, double b) {
    const double s = p.shape_sum();
    const double z = p.beta2() / (p.beta1() + p.beta2());
    const SpecialValue f = specfun::gauss_2f1(b, b + s - 1.0, b + p.alpha2(), z);
    const double log_pref = log_base(p, b) + log_gamma(b) + log_gamma(b + s - 1.0) - log_gamma(p.alpha1()) -
                            log_gamma(b + p.alpha2());
    const double pref = std::exp(log_pref);
    return {pref * f.value, pref * f.abs_error_estimate, f.converged};
}

// Value at 0 of the polynomial through (x_i, y_i), Neville's scheme.
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
    std::vector<double> t(y.begin(), y.end());
    const std::size_t n = t.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            t[i] = (x[i + m] * t[i] - x[i] * t[i + 1]) / (x[i + m] - x[i]);
        }
    }
    return t[0];
}

MomentReport limit_report(MomentRoute route, std::span<const double> x, std::span<const double> y,
                          double extra_error) {
    const double full = extrapolate_to_zero(x, y);
    const double reduced = extrapolate_to_zero(x.subspan(1), y.subspan(1));
    return {-1.0, full, route, std::abs(full - reduced) + extra_error};
}

}  // namespace

std::string_view to_string(MomentRoute route) {
    switch (route) {
        case MomentRoute::recurrence:
            return "recurrence";
        case MomentRoute::closed_form_1:
            return "closed_form_1";
        case MomentRoute::closed_form_2:
            return "closed_form_2";
        case MomentRoute::binomial_sum:
            return "binomial_sum";
        case MomentRoute::quadrature:
            return "quadrature";
        case MomentRoute::monte_carlo:
            return "monte_carlo";
        case MomentRoute::pv_quadrature:
            return "pv_quadrature";
        case MomentRoute::pv_analytic_limit:
            return "pv_analytic_limit";
        case MomentRoute::closed_form:
            return "closed_form";
        case MomentRoute::connection_form:
            return "connection_form";
    }
    return "unknown";
}

std::vector<MomentReport> moments_recurrence(const GddParams& params, unsigned k_max) {
    const double a1 = params.alpha1();
    const double b1 = params.beta1();
    const double a2 = params.alpha2();
    const double b2 = params.beta2();
    std::vector<MomentReport> out;
    out.reserve(k_max + 1);
    out.push_back({0.0, 1.0, MomentRoute::recurrence, std::nullopt});
    double prev = 0.0;
    double cur = 1.0;
    for (unsigned k = 0; k < k_max; ++k) {
        const double kd = k;
        const double next = ((kd * (b2 - b1) + (a1 * b2 - a2 * b1)) * cur + kd * (kd - 1.0 + a1 + a2) * prev) /
                            (b1 * b2);
        prev = cur;
        cur = next;
        out.push_back({kd + 1.0, cur, MomentRoute::recurrence, std::nullopt});
    }
    return out;
}

MomentReport moment_closed_form(const GddParams& params, unsigned k, ClosedForm which) {
    const GddParams p = which == ClosedForm::first ? params : params.swapped();
    const double kd = k;
    const double pref = gamma_moment(p.alpha1(), p.beta1(), k);
    const SpecialValue f = specfun::gauss_2f1(-kd, p.alpha2(), -(p.alpha1() + kd - 1.0), -p.beta1() / p.beta2());
    double value = pref * f.value;
    if (which == ClosedForm::second && k % 2 == 1) {
        value = -value;
    }
    return {kd, value, which == ClosedForm::first ? MomentRoute::closed_form_1 : MomentRoute::closed_form_2,
            std::nullopt};
}

MomentReport moment_binomial_oracle(const GddParams& params, unsigned k) {
    double sum = 0.0;
    for (unsigned l = 0; l <= k; ++l) {
        const double term = binomial(k, l) * gamma_moment(params.alpha1(), params.beta1(), k - l) *
                            gamma_moment(params.alpha2(), params.beta2(), l);
        sum += l % 2 == 0 ? term : -term;
    }
    return {static_cast<double>(k), sum, MomentRoute::binomial_sum, std::nullopt};
}

MomentReport moment_quadrature(const GddParams& params, unsigned k, const quadrature::Options& opts) {
    const double kd = k;
    const quadrature::Result r = expect(params, [kd](double x) { return std::pow(x, kd); }, opts);
    return {kd, r.value, MomentRoute::quadrature, r.abs_error_estimate};
}

double partial_abs_moment(const GddParams& params, double b, bool positive_side) {
    require_abs_order(params, b);
    return positive_half(positive_side ? params : params.swapped(), b).value;
}

MomentReport abs_moment(const GddParams& params, double b) {
    require_abs_order(params, b);
    const SpecialValue pos = positive_half(params, b);
    const SpecialValue neg = positive_half(params.swapped(), b);
    return {b - 1.0, pos.value + neg.value, MomentRoute::closed_form, std::nullopt};
}

MomentReport abs_moment_connection_form(const GddParams& params, double b) {
    require_abs_order(params, b);
    const double a1 = params.alpha1();
    const double a2 = params.alpha2();
    const double s = params.shape_sum();
    const double z = params.beta2() / (params.beta1() + params.beta2());
    const double k = b - 1.0;

    if (k >= 0.0 && k == std::floor(k) && std::fmod(k, 2.0) == 0.0) {
        const double log_pref = a1 * std::log(params.beta1()) - k * std::log(params.beta2()) -
                                a1 * std::log(params.beta1() + params.beta2()) + log_gamma(k + a2) - log_gamma(a2);
        const SpecialValue f = specfun::gauss_2f1_coupled_limit(a1, 1.0 - a2, 1.0 - k - a2, z);
        return {k, std::exp(log_pref) * f.value, MomentRoute::connection_form, std::nullopt};
    }

    const double sin_ratio_den = std::sin(std::numbers::pi * (b + a2));
    if (std::abs(sin_ratio_den) < 1e-8) {
        throw DomainError("connection form is singular when b + alpha2 is an integer; use abs_moment");
    }
    const double base = log_base(params, b);

    const double weight = 1.0 + std::sin(std::numbers::pi * a2) / sin_ratio_den;
    const SpecialValue f1 = specfun::gauss_2f1(b, b + s - 1.0, b + a2, z);
    const double term1 =
        weight * std::exp(base + log_gamma(b) + log_gamma(b + s - 1.0) - log_gamma(a1) - log_gamma(b + a2)) *
        f1.value;

    const specfun::SignedLog g = specfun::log_gamma_signed(b + a2 - 1.0);
    const SpecialValue f2 = specfun::gauss_2f1(a1, 1.0 - a2, 2.0 - b - a2, z);
    const double term2 =
        g.sign * std::exp(base + g.log_abs - log_gamma(a2) + (1.0 - b - a2) * std::log(z)) * f2.value;
    return {k, term1 + term2, MomentRoute::connection_form, std::nullopt};
}

MomentReport abs_moment_quadrature(const GddParams& params, double b, const quadrature::Options& opts) {
    require_abs_order(params, b);
    const double e = b - 1.0;
    const quadrature::Result r =
        expect(params, [e](double x) { return std::pow(std::abs(x), e); }, opts, b < 1.0);
    return {e, r.value, MomentRoute::quadrature, r.abs_error_estimate};
}

MomentReport pv_inverse_moment(const GddParams& params, const quadrature::Options& opts) {
    detail::require(params.shape_sum() > 1.0, "principal-value inverse moment requires alpha1 + alpha2 > 1");
    const quadrature::Integrand odd_part = [&params](double x) {
        return (pdf(params, x).value - pdf(params, -x).value) / x;
    };
    const double split = std::max(1.0, std::abs(params.mean()));
    const double scale = std::max(std::max(1.0, params.alpha1()) / params.beta1(),
                                  std::max(1.0, params.alpha2()) / params.beta2());
    quadrature::Task tail(odd_part, quadrature::SemiInfinite{split, scale}, opts);
    const quadrature::Result tail_r = quadrature::integrate(tail);

    const std::array<double, 3> deltas{1e-2, 1e-3, 1e-4};
    std::array<double, 3> values{};
    double quad_error = tail_r.abs_error_estimate;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        quadrature::Task head(odd_part, quadrature::Finite{deltas[i], split}, opts);
        const quadrature::Result r = quadrature::integrate(head);
        values[i] = r.value + tail_r.value;
        quad_error = std::max(quad_error, tail_r.abs_error_estimate + r.abs_error_estimate);
    }

    // The discarded piece over (0, delta) expands in powers delta^(s-1), delta, delta^s, delta^2, ...
    // with s = alpha1 + alpha2; eliminate the two lowest.
    const double s = params.shape_sum();
    std::vector<double> powers{s - 1.0, 1.0, s, 2.0};
    std::sort(powers.begin(), powers.end());
    powers.erase(std::unique(powers.begin(), powers.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-3; }),
                 powers.end());
    const double p1 = powers[0];
    const double p2 = powers[1];

    // Solve L + c1 d^p1 + c2 d^p2 = v at the three deltas.
    const auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    std::array<std::array<double, 3>, 3> a{};
    std::array<std::array<double, 3>, 3> a_l{};
    for (std::size_t i = 0; i < 3; ++i) {
        a[i] = {1.0, std::pow(deltas[i], p1), std::pow(deltas[i], p2)};
        a_l[i] = {values[i], a[i][1], a[i][2]};
    }
    const double full = det3(a_l) / det3(a);
    // One-term elimination from the two smallest deltas.
    const double w1 = std::pow(deltas[1], p1);
    const double w2 = std::pow(deltas[2], p1);
    const double reduced = (w1 * values[2] - w2 * values[1]) / (w1 - w2);
    return {-1.0, full, MomentRoute::pv_quadrature, std::abs(full - reduced) + quad_error};
}

MomentReport pv_inverse_moment_eps_limit(const GddParams& params) {
    detail::require(params.shape_sum() > 1.0, "principal-value inverse moment requires alpha1 + alpha2 > 1");
    const std::array<double, 3> eps{0.1, 0.05, 0.025};
    std::array<double, 3> values{};
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double b = eps[i];
        values[i] = partial_abs_moment(params, b, true) -
                    std::cos(std::numbers::pi * eps[i]) * partial_abs_moment(params, b, false);
    }
    return limit_report(MomentRoute::pv_analytic_limit, eps, values, 0.0);
}

}  // namespace gdd
