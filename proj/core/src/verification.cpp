#include "gdd/verification.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "gdd/moments.hpp"
#include "gdd/specfun.hpp"
#include "gdd/stein.hpp"

namespace gdd {

namespace {

constexpr std::array<double, 8> kOdeGrid{0.1, 0.3, 0.6, 1.0, 1.5, 2.5, 3.5, 5.0};
constexpr std::array<double, 4> kAbsOrders{0.5, 1.3, 2.0, 3.7};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Tracks the worst error and where it happened; NaN counts as infinitely bad.
class Worst {
public:
    void update(double err, const std::string& where) {
        if (std::isnan(err)) {
            err = std::numeric_limits<double>::infinity();
        }
        if (err > value_ || where_.empty()) {
            value_ = err;
            where_ = where;
        }
    }
    [[nodiscard]] double value() const { return value_; }
    [[nodiscard]] const std::string& where() const { return where_; }

private:
    double value_ = 0.0;
    std::string where_;
};

CheckResult run_check(const char* name, double threshold, const VerifyOptions& opts,
                      const std::function<void(Worst&)>& body) {
    CheckResult out;
    out.name = name;
    out.threshold = threshold * opts.tol_scale;
    Worst worst;
    try {
        body(worst);
    } catch (const std::exception& e) {
        out.measured = std::numeric_limits<double>::infinity();
        out.passed = false;
        out.detail = std::string("exception: ") + e.what();
        return out;
    }
    out.measured = worst.value();
    out.passed = out.measured <= out.threshold;
    out.detail = worst.where();
    return out;
}

double gamma_raw_moment(double alpha, double beta, unsigned l) {
    return specfun::pochhammer(alpha, l) / std::pow(beta, static_cast<double>(l));
}

CheckResult skipped(const char* name, double threshold, const VerifyOptions& opts, const char* why) {
    return {name, 0.0, threshold * opts.tol_scale, true, std::string("skipped: ") + why};
}

}  // namespace

CheckResult check_normalization(const GddParams& params, const VerifyOptions& opts) {
    return run_check("normalization", 1e-8, opts, [&](Worst& w) {
        const quadrature::Result r = expect(params, [](double) { return 1.0; }, opts.quadrature);
        w.update(std::abs(r.value - 1.0), r.converged ? "" : "quadrature not converged");
    });
}

CheckResult check_route_agreement(const GddParams& params, const VerifyOptions& opts) {
    return run_check("route_agreement", 1e-6, opts, [&](Worst& w) {
        const bool fourier = params.shape_sum() > 1.2;
        for (const double x : {-3.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 3.0}) {
            const double t = pdf(params, x, DensityRoute::tricomi, opts.quadrature).value;
            const double c = pdf(params, x, DensityRoute::convolution, opts.quadrature).value;
            w.update(rel_diff(t, c), fmt("tricomi/convolution x=%g", x));
            if (fourier) {
                const double f = pdf(params, x, DensityRoute::fourier, opts.quadrature).value;
                w.update(rel_diff(t, f), fmt("tricomi/fourier x=%g", x));
                w.update(rel_diff(c, f), fmt("convolution/fourier x=%g", x));
            }
        }
    });
}

CheckResult check_pdf_at_zero(const GddParams& params, const VerifyOptions& opts) {
    if (params.shape_sum() <= 1.0) {
        return skipped("pdf_at_zero", 1e-6, opts, "density unbounded at 0");
    }
    return run_check("pdf_at_zero", 1e-6, opts, [&](Worst& w) {
        const double closed = pdf_at_zero(params).value;
        w.update(rel_diff(closed, pdf(params, 0.0, DensityRoute::tricomi).value), "tricomi");
        w.update(rel_diff(closed, pdf(params, 0.0, DensityRoute::convolution, opts.quadrature).value), "convolution");
    });
}

double moment_error(const GddParams& params, unsigned k, double value, double reference) {
    // E(X1 + X2)^k bounds every term of the binomial expansion.
    double natural = 0.0;
    double binom = 1.0;
    for (unsigned l = 0; l <= k; ++l) {
        natural += binom * gamma_raw_moment(params.alpha1(), params.beta1(), k - l) *
                   gamma_raw_moment(params.alpha2(), params.beta2(), l);
        binom = binom * static_cast<double>(k - l) / static_cast<double>(l + 1);
    }
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-4 * natural);
}

CheckResult check_moment_routes(const GddParams& params, const VerifyOptions& opts) {
    return run_check("moment_routes", 1e-10, opts, [&](Worst& w) {
        const auto rec = moments_recurrence(params, 10);
        for (unsigned k = 0; k <= 10; ++k) {
            const double oracle = moment_binomial_oracle(params, k).value;
            w.update(moment_error(params, k, rec[k].value, oracle), fmt("recurrence k=%g", k));
            w.update(moment_error(params, k, moment_closed_form(params, k, ClosedForm::first).value, oracle),
                     fmt("closed_form_1 k=%g", k));
            w.update(moment_error(params, k, moment_closed_form(params, k, ClosedForm::second).value, oracle),
                     fmt("closed_form_2 k=%g", k));
        }
    });
}

CheckResult check_moment_quadrature(const GddParams& params, const VerifyOptions& opts) {
    return run_check("moment_quadrature", 1e-6, opts, [&](Worst& w) {
        for (unsigned k = 0; k <= 10; ++k) {
            const double oracle = moment_binomial_oracle(params, k).value;
            w.update(moment_error(params, k, moment_quadrature(params, k, opts.quadrature).value, oracle),
                     fmt("k=%g", k));
        }
    });
}

CheckResult check_abs_moment_quadrature(const GddParams& params, const VerifyOptions& opts) {
    return run_check("abs_moment_quadrature", 1e-6, opts, [&](Worst& w) {
        for (const double b : kAbsOrders) {
            if (b <= std::max(0.0, 1.0 - params.shape_sum())) {
                continue;
            }
            w.update(rel_diff(abs_moment(params, b).value, abs_moment_quadrature(params, b, opts.quadrature).value),
                     fmt("b=%g", b));
        }
    });
}

CheckResult check_abs_moment_unit(const GddParams& params, const VerifyOptions& opts) {
    return run_check("abs_moment_b1", 1e-9, opts,
                     [&](Worst& w) { w.update(std::abs(abs_moment(params, 1.0).value - 1.0), "b=1"); });
}

CheckResult check_even_reduction(const GddParams& params, const VerifyOptions& opts) {
    return run_check("even_reduction", 1e-9, opts, [&](Worst& w) {
        for (const unsigned k : {0U, 2U, 4U, 6U, 8U}) {
            const double reduced = abs_moment_connection_form(params, k + 1.0).value;
            w.update(rel_diff(reduced, moment_closed_form(params, k, ClosedForm::first).value), fmt("k=%g", k));
            w.update(rel_diff(reduced, abs_moment(params, k + 1.0).value), fmt("abs_moment k=%g", k));
        }
    });
}

CheckResult check_ode_residual(const GddParams& params, const VerifyOptions& opts) {
    if (params.shape_sum() <= 1.0) {
        return skipped("ode_residual", 1e-6, opts, "alpha1 + alpha2 <= 1");
    }
    return run_check("ode_residual", 1e-6, opts, [&](Worst& w) {
        for (const double ax : kOdeGrid) {
            for (const double x : {-ax, ax}) {
                w.update(ode_residual(params, x).scaled(), fmt("x=%g", x));
            }
        }
    });
}

CheckResult check_stein(const GddParams& params, const VerifyOptions& opts) {
    return run_check("stein_identity", 1e-7, opts, [&](Worst& w) {
        for (const TestFunction& tf : standard_battery()) {
            const SteinResult r = stein_expectation(params, tf, opts.quadrature);
            w.update(std::abs(r.value) / r.term_scale, "g=" + tf.name);
        }
    });
}

CheckResult check_charfn_ode(const GddParams& params, const VerifyOptions& opts) {
    return run_check("charfn_ode", 1e-8, opts, [&](Worst& w) {
        for (const double t : {0.0, 0.5, 1.0, 2.0}) {
            w.update(charfn_ode_check(params, t), fmt("t=%g", t));
        }
    });
}

CheckResult check_pv_routes(const GddParams& params, const VerifyOptions& opts) {
    if (params.shape_sum() <= 1.0) {
        return skipped("pv_routes", 1e-4, opts, "alpha1 + alpha2 <= 1");
    }
    const MomentReport delta = pv_inverse_moment(params, opts.quadrature);
    const MomentReport eps = pv_inverse_moment_eps_limit(params);
    const double allowed = std::max(1e-4, delta.abs_error_estimate.value_or(0.0) + eps.abs_error_estimate.value_or(0.0));
    CheckResult out{"pv_routes", std::abs(delta.value - eps.value), allowed * opts.tol_scale, false,
                    fmt("delta-limit %.12g", delta.value) + fmt(", eps-limit %.12g", eps.value)};
    out.passed = out.measured <= out.threshold;
    return out;
}

std::vector<CheckResult> verify_gdd(const GddParams& params, const VerifyOptions& opts) {
    return {check_normalization(params, opts),     check_route_agreement(params, opts),
            check_pdf_at_zero(params, opts),       check_moment_routes(params, opts),
            check_moment_quadrature(params, opts), check_abs_moment_quadrature(params, opts),
            check_abs_moment_unit(params, opts),   check_even_reduction(params, opts),
            check_ode_residual(params, opts),      check_stein(params, opts),
            check_charfn_ode(params, opts),        check_pv_routes(params, opts)};
}

CheckResult check_vg_density(const VgParams& vg, const VerifyOptions& opts) {
    return run_check("vg_density", 1e-8, opts, [&](Worst& w) {
        const GddParams p = to_gdd(vg);
        for (const double x : {-4.0, -1.0, -0.2, 0.2, 1.0, 4.0}) {
            w.update(rel_diff(vg_pdf(vg, x).value, pdf(p, x).value), fmt("x=%g", x));
        }
    });
}

CheckResult check_vg_moments(const VgParams& vg, const VerifyOptions& opts) {
    return run_check("vg_moments", 1e-9, opts, [&](Worst& w) {
        const GddParams p = to_gdd(vg);
        const auto vg_rec = vg_moments_recurrence(vg, 10);
        const auto gdd_rec = moments_recurrence(p, 10);
        for (unsigned k = 0; k <= 10; ++k) {
            const double ref = vg_rec[k].value;
            w.update(moment_error(p, k, vg_moment_closed_form(vg, k).value, ref), fmt("closed form k=%g", k));
            w.update(moment_error(p, k, gdd_rec[k].value, ref), fmt("mapped recurrence k=%g", k));
        }
    });
}

CheckResult check_vg_abs_moments(const VgParams& vg, const VerifyOptions& opts) {
    return run_check("vg_abs_moments", 1e-8, opts, [&](Worst& w) {
        const GddParams p = to_gdd(vg);
        for (const double k : {0.5, 1.0, 2.5}) {
            w.update(rel_diff(vg_abs_moment(vg, k).value, abs_moment(p, k + 1.0).value), fmt("k=%g", k));
        }
    });
}

CheckResult check_vg_ode(const VgParams& vg, const VerifyOptions& opts) {
    if (vg.r() <= 1.0) {
        return skipped("vg_ode_residual", 1e-6, opts, "r <= 1");
    }
    return run_check("vg_ode_residual", 1e-6, opts, [&](Worst& w) {
        for (const double ax : kOdeGrid) {
            for (const double x : {-ax, ax}) {
                w.update(vg_ode_residual(vg, x).scaled(), fmt("x=%g", x));
            }
        }
    });
}

CheckResult check_vg_operator_ratio(const VgParams& vg, const VerifyOptions& opts) {
    return run_check("vg_operator_ratio", 1e-9, opts, [&](Worst& w) {
        const double first = vg_operator_ratio(vg, -kOdeGrid.back());
        for (const double ax : kOdeGrid) {
            for (const double x : {-ax, ax}) {
                w.update(rel_diff(vg_operator_ratio(vg, x), first), fmt("x=%g", x));
            }
        }
    });
}

CheckResult check_vg_stein(const VgParams& vg, const VerifyOptions& opts) {
    return run_check("vg_stein_identity", 1e-7, opts, [&](Worst& w) {
        for (const TestFunction& tf : standard_battery()) {
            const SteinResult r = vg_stein_expectation(vg, tf, opts.quadrature);
            w.update(std::abs(r.value) / r.term_scale, "g=" + tf.name);
        }
    });
}

std::vector<CheckResult> verify_vg(const VgParams& vg, const VerifyOptions& opts) {
    return {check_vg_density(vg, opts), check_vg_moments(vg, opts),        check_vg_abs_moments(vg, opts),
            check_vg_ode(vg, opts),     check_vg_operator_ratio(vg, opts), check_vg_stein(vg, opts)};
}

}  // namespace gdd
