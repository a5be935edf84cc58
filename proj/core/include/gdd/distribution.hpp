#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "gdd/errors.hpp"
#include "gdd/quadrature.hpp"

namespace gdd {

/// Law of X1 - X2 with X1 ~ Gamma(alpha1, rate beta1), X2 ~ Gamma(alpha2, rate beta2) independent.
class GddParams {
public:
    /// Throws DomainError unless all four values are finite and strictly positive.
    GddParams(double alpha1, double beta1, double alpha2, double beta2);

    [[nodiscard]] double alpha1() const { return alpha1_; }
    [[nodiscard]] double beta1() const { return beta1_; }
    [[nodiscard]] double alpha2() const { return alpha2_; }
    [[nodiscard]] double beta2() const { return beta2_; }

    /// Parameters of X2 - X1.
    [[nodiscard]] GddParams swapped() const { return {alpha2_, beta2_, alpha1_, beta1_}; }

    [[nodiscard]] double shape_sum() const { return alpha1_ + alpha2_; }
    [[nodiscard]] double mean() const { return alpha1_ / beta1_ - alpha2_ / beta2_; }
    [[nodiscard]] double variance() const {
        return alpha1_ / (beta1_ * beta1_) + alpha2_ / (beta2_ * beta2_);
    }

    friend bool operator==(const GddParams&, const GddParams&) = default;

private:
    double alpha1_;
    double beta1_;
    double alpha2_;
    double beta2_;
};

enum class DensityRoute { tricomi, convolution, fourier, polynomial };

std::string_view to_string(DensityRoute route);
/// Throws DomainError for unknown names.
DensityRoute parse_density_route(std::string_view name);

/// E exp(itX) = (1 - it/beta1)^-alpha1 (1 + it/beta2)^-alpha2.
std::complex<double> char_fn(const GddParams& params, double t);

/// Density at x by the chosen route.
///
/// Throws PoleError at x = 0 when alpha1 + alpha2 <= 1, and DomainError when the
/// route is inadmissible (fourier with alpha1 + alpha2 <= 1, polynomial without
/// an integer shape on the relevant side).
SpecialValue pdf(const GddParams& params, double x, DensityRoute route = DensityRoute::tricomi,
                 const quadrature::Options& opts = {});

/// ln pdf(x) through the Tricomi representation, with the prefactor kept in log space.
double log_pdf(const GddParams& params, double x);

/// Closed-form density at the origin; PoleError when alpha1 + alpha2 <= 1.
SpecialValue pdf_at_zero(const GddParams& params);

/// P(X <= x) by quadrature of the Tricomi density, split at 0 and at the mean.
SpecialValue cdf(const GddParams& params, double x, const quadrature::Options& opts = {});

/// cdf at every point of an ascending sequence, accumulated piecewise between
/// neighbouring points.
std::vector<double> cdf_sorted(const GddParams& params, std::span<const double> ascending,
                               const quadrature::Options& opts = {});

/// Integral of f(x) pdf(x) over the real line, split at 0 and the mean, with
/// tail mapping scales adapted to each side's decay rate. Set singular_at_zero
/// when f itself is unbounded at the origin.
quadrature::Result expect(const GddParams& params, const quadrature::Integrand& f,
                          const quadrature::Options& opts = {}, bool singular_at_zero = false);

}  // namespace gdd
