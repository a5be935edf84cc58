#include "gdd/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gdd/specfun.hpp"

namespace gdd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_positive_integer(double v) { return v >= 1.0 && v == std::floor(v); }

// ln of beta1^alpha1 beta2^alpha2 / (beta1 + beta2)^(alpha1 + alpha2 - 1)
double log_common_prefactor(const GddParams& p) {
    return p.alpha1() * std::log(p.beta1()) + p.alpha2() * std::log(p.beta2()) -
           (p.shape_sum() - 1.0) * std::log(p.beta1() + p.beta2());
}

void require_finite_x(double x) { detail::require_finite(x, "x"); }

// x > 0 branch of the Tricomi form; the x < 0 branch is the same on swapped parameters.
SpecialValue tricomi_positive(const GddParams& p, double x) {
    const double log_pref = log_common_prefactor(p) - specfun::log_gamma(p.alpha1()) - p.beta1() * x;
    const double z = x * (p.beta1() + p.beta2());
    const SpecialValue u = specfun::tricomi_u(1.0 - p.alpha1(), 2.0 - p.shape_sum(), z);
    if (u.value <= 0.0) {
        const double scale = std::exp(log_pref);
        return {scale * u.value, scale * u.abs_error_estimate, u.converged};
    }
    const double value = std::exp(log_pref + std::log(u.value));
    return {value, value * (u.rel_error_estimate() + 8.0 * kEps), u.converged};
}

SpecialValue tricomi_route(const GddParams& p, double x) {
    if (x == 0.0) {
        return pdf_at_zero(p);
    }
    return x > 0.0 ? tricomi_positive(p, x) : tricomi_positive(p.swapped(), -x);
}

// e^{-beta1 x} beta1^alpha1 beta2^alpha2 / (Gamma(alpha1) Gamma(alpha2))
//   * int_0^inf (x + s)^(alpha1 - 1) s^(alpha2 - 1) e^{-(beta1 + beta2) s} ds,  x >= 0
SpecialValue convolution_positive(const GddParams& p, double x, const quadrature::Options& opts) {
    const double log_c = p.alpha1() * std::log(p.beta1()) + p.alpha2() * std::log(p.beta2()) -
                         specfun::log_gamma(p.alpha1()) - specfun::log_gamma(p.alpha2()) - p.beta1() * x;
    const double rate = p.beta1() + p.beta2();
    const double a1 = p.alpha1() - 1.0;
    const double a2 = p.alpha2() - 1.0;
    quadrature::Task task(
        [=](double s) {
            if (s <= 0.0) {
                return 0.0;
            }
            const double e = log_c + a1 * std::log(x + s) + a2 * std::log(s) - rate * s;
            return std::exp(e);
        },
        quadrature::SemiInfinite{0.0, std::max(1.0, p.shape_sum()) / rate}, opts);
    task.singular_lo = p.alpha2() < 1.0 || (x == 0.0 && p.shape_sum() < 2.0);
    const quadrature::Result r = quadrature::integrate(task);
    return {r.value, r.abs_error_estimate, r.converged};
}

SpecialValue convolution_route(const GddParams& p, double x, const quadrature::Options& opts) {
    if (x == 0.0 && p.shape_sum() <= 1.0) {
        throw PoleError("density is infinite at x = 0 when alpha1 + alpha2 <= 1");
    }
    return x >= 0.0 ? convolution_positive(p, x, opts) : convolution_positive(p.swapped(), -x, opts);
}

// (1 / 2 pi) int e^{-ixt} phi(t) dt = (1 / pi) int_0^inf |phi(t)| cos(arg phi(t) - x t) dt
SpecialValue fourier_route(const GddParams& p, double x, const quadrature::Options& opts) {
    if (x == 0.0 && p.shape_sum() <= 1.0) {
        throw PoleError("density is infinite at x = 0 when alpha1 + alpha2 <= 1");
    }
    if (p.shape_sum() <= 1.0) {
        throw DomainError("fourier route needs alpha1 + alpha2 > 1 for an integrable characteristic function");
    }
    const double a1 = p.alpha1();
    const double a2 = p.alpha2();
    const double b1 = p.beta1();
    const double b2 = p.beta2();
    quadrature::Task task(
        [=](double t) {
            const double u1 = t / b1;
            const double u2 = t / b2;
            const double log_mod = -0.5 * (a1 * std::log1p(u1 * u1) + a2 * std::log1p(u2 * u2));
            const double phase = a1 * std::atan(u1) - a2 * std::atan(u2) - x * t;
            return std::exp(log_mod) * std::cos(phase);
        },
        quadrature::SemiInfinite{0.0, std::min(b1, b2)}, opts);
    task.abs_tol = opts.abs_tol * std::numbers::pi;
    task.oscillatory_hint = x;
    if (x == 0.0) {
        task.singular_hi = p.shape_sum() < 2.0;
    }
    const quadrature::Result r = quadrature::integrate_oscillatory(task, x);
    return {r.value / std::numbers::pi, r.abs_error_estimate / std::numbers::pi, r.converged};
}

// Integer alpha1: prefactor * Gamma(alpha1 + alpha2 - 1) / (Gamma(alpha1) Gamma(alpha2))
//   * e^{-beta1 x} M(1 - alpha1, 2 - alpha1 - alpha2; x (beta1 + beta2))
SpecialValue polynomial_positive(const GddParams& p, double x) {
    if (!is_positive_integer(p.alpha1())) {
        throw DomainError("polynomial route needs a positive integer shape on the evaluated side");
    }
    const double log_pref = log_common_prefactor(p) + specfun::log_gamma(p.shape_sum() - 1.0) -
                            specfun::log_gamma(p.alpha1()) - specfun::log_gamma(p.alpha2()) - p.beta1() * x;
    const SpecialValue m =
        specfun::kummer_m(1.0 - p.alpha1(), 2.0 - p.shape_sum(), x * (p.beta1() + p.beta2()));
    const double scale = std::exp(log_pref);
    return {scale * m.value, scale * m.abs_error_estimate + 4.0 * kEps * std::abs(scale * m.value),
            m.converged};
}

SpecialValue polynomial_route(const GddParams& p, double x) {
    if (x == 0.0) {
        return pdf_at_zero(p);
    }
    return x > 0.0 ? polynomial_positive(p, x) : polynomial_positive(p.swapped(), -x);
}

struct Piece {
    quadrature::Interval interval;
    bool singular_lo = false;
    bool singular_hi = false;
};

double left_scale(const GddParams& p) { return std::max(1.0, p.alpha2()) / p.beta2(); }
double right_scale(const GddParams& p) { return std::max(1.0, p.alpha1()) / p.beta1(); }

// Pieces covering (-inf, +inf) with breakpoints at 0 and the mean.
std::vector<Piece> line_pieces(const GddParams& p, bool singular_at_zero = false) {
    const bool cusp = singular_at_zero || p.shape_sum() < 2.0;
    const double m = p.mean();
    const double lo = std::min(0.0, m);
    const double hi = std::max(0.0, m);
    std::vector<Piece> pieces;
    pieces.push_back({quadrature::SemiInfiniteBelow{lo, left_scale(p)}, lo == 0.0 && cusp, false});
    if (hi > lo) {
        pieces.push_back({quadrature::Finite{lo, hi}, lo == 0.0 && cusp, hi == 0.0 && cusp});
    }
    pieces.push_back({quadrature::SemiInfinite{hi, right_scale(p)}, hi == 0.0 && cusp, false});
    return pieces;
}

quadrature::Result integrate_pieces(const std::vector<Piece>& pieces, const quadrature::Integrand& f,
                                    const quadrature::Options& opts) {
    quadrature::Result total{0.0, 0.0, 0, true};
    for (const Piece& piece : pieces) {
        quadrature::Task task(f, piece.interval, opts);
        task.singular_lo = piece.singular_lo;
        task.singular_hi = piece.singular_hi;
        const quadrature::Result r = quadrature::integrate(task);
        total.value += r.value;
        total.abs_error_estimate += r.abs_error_estimate;
        total.subdivisions_used += r.subdivisions_used;
        total.converged = total.converged && r.converged;
    }
    return total;
}

}  // namespace

GddParams::GddParams(double alpha1, double beta1, double alpha2, double beta2)
    : alpha1_(alpha1), beta1_(beta1), alpha2_(alpha2), beta2_(beta2) {
    for (const double v : {alpha1, beta1, alpha2, beta2}) {
        detail::require(std::isfinite(v) && v > 0.0,
                        "gamma difference parameters must be finite and strictly positive");
    }
}

std::string_view to_string(DensityRoute route) {
    switch (route) {
        case DensityRoute::tricomi:
            return "tricomi";
        case DensityRoute::convolution:
            return "convolution";
        case DensityRoute::fourier:
            return "fourier";
        case DensityRoute::polynomial:
            return "polynomial";
    }
    return "unknown";
}

DensityRoute parse_density_route(std::string_view name) {
    for (const DensityRoute r : {DensityRoute::tricomi, DensityRoute::convolution, DensityRoute::fourier,
                                 DensityRoute::polynomial}) {
        if (to_string(r) == name) {
            return r;
        }
    }
    throw DomainError("unknown density route '" + std::string(name) + "'");
}

std::complex<double> char_fn(const GddParams& params, double t) {
    using namespace std::complex_literals;
    const std::complex<double> l1 = std::log(1.0 - 1i * (t / params.beta1()));
    const std::complex<double> l2 = std::log(1.0 + 1i * (t / params.beta2()));
    return std::exp(-params.alpha1() * l1 - params.alpha2() * l2);
}

SpecialValue pdf(const GddParams& params, double x, DensityRoute route, const quadrature::Options& opts) {
    require_finite_x(x);
    switch (route) {
        case DensityRoute::tricomi:
            return tricomi_route(params, x);
        case DensityRoute::convolution:
            return convolution_route(params, x, opts);
        case DensityRoute::fourier:
            return fourier_route(params, x, opts);
        case DensityRoute::polynomial:
            return polynomial_route(params, x);
    }
    throw DomainError("unknown density route");
}

double log_pdf(const GddParams& params, double x) {
    require_finite_x(x);
    if (x == 0.0) {
        if (params.shape_sum() <= 1.0) {
            throw PoleError("density is infinite at x = 0 when alpha1 + alpha2 <= 1");
        }
        return log_common_prefactor(params) + specfun::log_gamma(params.shape_sum() - 1.0) -
               specfun::log_gamma(params.alpha1()) - specfun::log_gamma(params.alpha2());
    }
    const GddParams& p = x > 0.0 ? params : params.swapped();
    const double ax = std::abs(x);
    const double log_pref = log_common_prefactor(p) - specfun::log_gamma(p.alpha1()) - p.beta1() * ax;
    const SpecialValue u = specfun::tricomi_u(1.0 - p.alpha1(), 2.0 - p.shape_sum(), ax * (p.beta1() + p.beta2()));
    return log_pref + std::log(u.value);
}

SpecialValue pdf_at_zero(const GddParams& params) {
    if (params.shape_sum() <= 1.0) {
        throw PoleError("density is infinite at x = 0 when alpha1 + alpha2 <= 1");
    }
    const double value = std::exp(log_pdf(params, 0.0));
    return {value, 16.0 * kEps * value, true};
}

SpecialValue cdf(const GddParams& params, double x, const quadrature::Options& opts) {
    require_finite_x(x);
    const quadrature::Integrand density = [&params](double t) { return tricomi_route(params, t).value; };
    const bool cusp = params.shape_sum() < 2.0;
    std::vector<double> cuts;
    for (const double c : {0.0, params.mean()}) {
        if (c < x) {
            cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(x);
    std::vector<Piece> pieces;
    pieces.push_back({quadrature::SemiInfiniteBelow{cuts.front(), left_scale(params)}, cusp && cuts.front() == 0.0,
                      false});
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        pieces.push_back({quadrature::Finite{cuts[i], cuts[i + 1]}, cusp && cuts[i] == 0.0,
                          cusp && cuts[i + 1] == 0.0});
    }
    const quadrature::Result r = integrate_pieces(pieces, density, opts);
    return {r.value, r.abs_error_estimate, r.converged};
}

std::vector<double> cdf_sorted(const GddParams& params, std::span<const double> ascending,
                               const quadrature::Options& opts) {
    std::vector<double> out;
    out.reserve(ascending.size());
    if (ascending.empty()) {
        return out;
    }
    const quadrature::Integrand density = [&params](double t) { return tricomi_route(params, t).value; };
    double running = cdf(params, ascending.front(), opts).value;
    out.push_back(running);
    auto segment = [&](double a, double b) {
        if (a == b) {
            return 0.0;
        }
        quadrature::Task task(density, quadrature::Finite{a, b}, opts);
        task.abs_tol = opts.abs_tol * 1e-3;
        return quadrature::integrate(task).value;
    };
    for (std::size_t i = 1; i < ascending.size(); ++i) {
        const double a = ascending[i - 1];
        const double b = ascending[i];
        detail::require(b >= a, "cdf_sorted requires ascending input");
        if (a < 0.0 && b > 0.0) {
            running += segment(a, 0.0) + segment(0.0, b);
        } else {
            running += segment(a, b);
        }
        out.push_back(running);
    }
    return out;
}

quadrature::Result expect(const GddParams& params, const quadrature::Integrand& f,
                          const quadrature::Options& opts, bool singular_at_zero) {
    const quadrature::Integrand weighted = [&params, &f](double t) {
        const double p = tricomi_route(params, t).value;
        return p == 0.0 ? 0.0 : f(t) * p;
    };
    return integrate_pieces(line_pieces(params, singular_at_zero), weighted, opts);
}

}  // namespace gdd
