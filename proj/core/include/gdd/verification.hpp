#pragma once

#include <string>
#include <vector>

#include "gdd/distribution.hpp"
#include "gdd/variance_gamma.hpp"

namespace gdd {

/// Outcome of one cross-route check: the worst error seen against its threshold.
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    /// Multiplies every threshold; values below 1 tighten the suite.
    double tol_scale = 1.0;
    quadrature::Options quadrature{};
};

/// |integral of pdf - 1| <= 1e-8.
CheckResult check_normalization(const GddParams& params, const VerifyOptions& opts = {});

/// Pairwise relative agreement of the tricomi, convolution and (when
/// alpha1 + alpha2 > 1.2) fourier densities at x in {+-0.1, +-0.5, +-1, +-3}, 1e-6.
CheckResult check_route_agreement(const GddParams& params, const VerifyOptions& opts = {});

/// pdf_at_zero against the tricomi and convolution routes at 0, 1e-6; skipped
/// (passes with measured 0) when alpha1 + alpha2 <= 1.
CheckResult check_pdf_at_zero(const GddParams& params, const VerifyOptions& opts = {});

/// Relative error with a floor of 1e-4 E(X1 + X2)^k, for moments that vanish by symmetry.
double moment_error(const GddParams& params, unsigned k, double value, double reference);

/// Recurrence, both closed forms and the binomial sum for k <= 10 at 1e-10.
CheckResult check_moment_routes(const GddParams& params, const VerifyOptions& opts = {});

/// Quadrature moments for k <= 10 against the binomial sum at 1e-6.
CheckResult check_moment_quadrature(const GddParams& params, const VerifyOptions& opts = {});

/// Closed-form absolute moments against quadrature at the admissible b in {0.5, 1.3, 2, 3.7}, 1e-6.
CheckResult check_abs_moment_quadrature(const GddParams& params, const VerifyOptions& opts = {});

/// |E|X|^0 - 1| <= 1e-9.
CheckResult check_abs_moment_unit(const GddParams& params, const VerifyOptions& opts = {});

/// Connection-form even reduction against the closed form for k in {0, 2, 4, 6, 8}, 1e-9.
CheckResult check_even_reduction(const GddParams& params, const VerifyOptions& opts = {});

/// Scaled density ODE residual at +-{0.1, 0.3, 0.6, 1, 1.5, 2.5, 3.5, 5}, 1e-6; skipped when
/// alpha1 + alpha2 <= 1.
CheckResult check_ode_residual(const GddParams& params, const VerifyOptions& opts = {});

/// Stein expectation over the standard battery, |value| <= 1e-7 term scale.
CheckResult check_stein(const GddParams& params, const VerifyOptions& opts = {});

/// Characteristic-function ODE residual at t in {0, 0.5, 1, 2}, 1e-8.
CheckResult check_charfn_ode(const GddParams& params, const VerifyOptions& opts = {});

/// Principal-value E[1/X] by the delta and eps limits agree within max(1e-4, the
/// sum of both error estimates); skipped when alpha1 + alpha2 <= 1.
CheckResult check_pv_routes(const GddParams& params, const VerifyOptions& opts = {});

/// Every per-parameter check above.
std::vector<CheckResult> verify_gdd(const GddParams& params, const VerifyOptions& opts = {});

/// vg_pdf against pdf(to_gdd) at x in {+-0.2, +-1, +-4}, 1e-8.
CheckResult check_vg_density(const VgParams& vg, const VerifyOptions& opts = {});

/// Closed form, VG recurrence and mapped gamma difference recurrence for k <= 10 at 1e-9.
CheckResult check_vg_moments(const VgParams& vg, const VerifyOptions& opts = {});

/// VG absolute moment closed form against the mapped gamma difference one at k in {0.5, 1, 2.5}, 1e-8.
CheckResult check_vg_abs_moments(const VgParams& vg, const VerifyOptions& opts = {});

/// Scaled VG ODE residual on the same grid as check_ode_residual, 1e-6; skipped for r <= 1.
CheckResult check_vg_ode(const VgParams& vg, const VerifyOptions& opts = {});

/// |vg_operator_ratio - ratio at the first grid point| over the grid, relative, 1e-9.
CheckResult check_vg_operator_ratio(const VgParams& vg, const VerifyOptions& opts = {});

/// VG Stein expectation over the standard battery, 1e-7 term scale.
CheckResult check_vg_stein(const VgParams& vg, const VerifyOptions& opts = {});

std::vector<CheckResult> verify_vg(const VgParams& vg, const VerifyOptions& opts = {});

}  // namespace gdd
