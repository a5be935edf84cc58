#pragma once

#include <complex>
#include <vector>

#include "gdd/distribution.hpp"
#include "gdd/moments.hpp"
#include "gdd/stein.hpp"

namespace gdd {

/// Variance gamma law: N(theta a, sigma^2 a) with a ~ Gamma(r/2, rate 1/2).
class VgParams {
public:
    /// Throws DomainError unless r > 0, sigma > 0 and theta is finite.
    VgParams(double r, double theta, double sigma);

    [[nodiscard]] double r() const { return r_; }
    [[nodiscard]] double theta() const { return theta_; }
    [[nodiscard]] double sigma() const { return sigma_; }

    friend bool operator==(const VgParams&, const VgParams&) = default;

private:
    double r_;
    double theta_;
    double sigma_;
};

/// alpha1 = alpha2 = r/2, 1/beta1 = theta + sqrt(theta^2 + sigma^2), 1/beta2 = -theta + sqrt(theta^2 + sigma^2).
GddParams to_gdd(const VgParams& vg);

/// Inverse of to_gdd; throws DomainError unless alpha1 == alpha2.
VgParams from_gdd(const GddParams& params);

/// Bessel-K form of the density. PoleError at x = 0 when r <= 1.
SpecialValue vg_pdf(const VgParams& vg, double x);

/// (1 - 2 i theta t + sigma^2 t^2)^(-r/2)
std::complex<double> vg_char_fn(const VgParams& vg, double t);

/// Integral of f(x) vg_pdf(x) over the line, split at 0 and r theta.
quadrature::Result vg_expect(const VgParams& vg, const quadrature::Integrand& f, const quadrature::Options& opts = {});

/// x f'' - (2 theta x / sigma^2 + (r - 2)) f' - (x / sigma^2 - (r - 2) theta / sigma^2) f
Residual vg_operator(const VgParams& vg, double x, const Derivatives& d);

/// vg_operator applied to vg_pdf with finite-difference derivatives at ode_step(to_gdd(vg), x).
Residual vg_ode_residual(const VgParams& vg, double x);

/// Ratio of vg_operator to density_operator(to_gdd(vg)) applied to a fixed
/// probe function at x. Constant in x when the two operators agree up to a factor.
double vg_operator_ratio(const VgParams& vg, double x);

/// m_0 .. m_kmax from m_{k+1} = theta (2k + r) m_k + sigma^2 k (r + k - 1) m_{k-1}.
std::vector<MomentReport> vg_moments_recurrence(const VgParams& vg, unsigned k_max);

/// m_k from the 2F1 closed form with l = ceil(k/2) + 1/2 and m = k mod 2.
MomentReport vg_moment_closed_form(const VgParams& vg, unsigned k);

/// E|Y|^k for k > max(-1, -r) from the 2F1 closed form of argument theta^2 / (theta^2 + sigma^2).
MomentReport vg_abs_moment(const VgParams& vg, double k);

/// E[sigma^2 Y g''(Y) + (sigma^2 r + 2 theta Y) g'(Y) + (r theta - Y) g(Y)] against vg_pdf.
SteinResult vg_stein_expectation(const VgParams& vg, const TestFunction& tf, const quadrature::Options& opts = {});

}  // namespace gdd
