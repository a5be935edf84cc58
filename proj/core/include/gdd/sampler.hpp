#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gdd/distribution.hpp"
#include "gdd/variance_gamma.hpp"

namespace gdd {

/// xoshiro256** 1.0 (Blackman and Vigna), seeded through splitmix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform();
    /// Advance by 2^128 draws.
    void jump();
    /// Advance by 2^192 draws.
    void long_jump();

    [[nodiscard]] const std::array<std::uint64_t, 4>& state() const { return s_; }
    friend bool operator==(const Xoshiro256&, const Xoshiro256&) = default;

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Seeded generator state. Single owner; copy it to replay a stream.
class SamplerState {
public:
    explicit SamplerState(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    /// Number of 64-bit draws taken from the main stream so far.
    [[nodiscard]] std::uint64_t stream_position() const { return position_; }

    double uniform();
    /// Standard normal by the Marsaglia polar method.
    double normal();

    /// Two independent child streams, 2^128 and 2^129 draws ahead of the current
    /// position; the main stream then moves 2^192 ahead so later calls never overlap.
    std::array<SamplerState, 2> split();

private:
    SamplerState(std::uint64_t seed, const Xoshiro256& engine) : seed_(seed), engine_(engine) {}

    std::uint64_t seed_;
    std::uint64_t position_ = 0;
    Xoshiro256 engine_;
    std::optional<double> spare_normal_;
};

/// One Gamma(alpha, rate beta) variate: Marsaglia-Tsang squeeze rejection, with
/// alpha < 1 boosted to alpha + 1 and corrected by U^(1/alpha).
double draw_gamma(SamplerState& state, double alpha, double beta);

std::vector<double> sample_gamma(SamplerState& state, double alpha, double beta, std::size_t n);

/// X1 - X2 with X1 and X2 drawn from the two streams of state.split().
std::vector<double> sample_gdd(SamplerState& state, const GddParams& params, std::size_t n);

enum class VgSamplingRoute { normal_mixture, gamma_difference };

/// normal_mixture: theta a + sigma sqrt(a) N with a ~ Gamma(r/2, rate 1/2);
/// gamma_difference: sample_gdd(to_gdd(vg)).
std::vector<double> sample_vg(SamplerState& state, const VgParams& vg, std::size_t n,
                              VgSamplingRoute route = VgSamplingRoute::normal_mixture);

/// Empirical k-th raw moment against an analytic value; the standard error is
/// sqrt((m_2k - m_k^2) / n) from the analytic moments.
struct MomentCheck {
    unsigned k = 0;
    double empirical = 0.0;
    double analytic = 0.0;
    double standard_error = 0.0;
    [[nodiscard]] double z_score() const { return (empirical - analytic) / standard_error; }
};

MomentCheck check_moment(std::span<const double> samples, unsigned k, double analytic_k, double analytic_2k);

/// Kolmogorov-Smirnov critical value multiplier at significance 0.001, sqrt(ln(2/0.001)/2).
inline constexpr double kKsCritical001 = 1.9494646;

struct KsResult {
    double statistic = 0.0;
    double critical = 0.0;
    [[nodiscard]] bool passes() const { return statistic <= critical; }
};

/// One-sample KS of the samples against the gamma difference cdf.
KsResult ks_one_sample(std::vector<double> samples, const GddParams& params);

/// Two-sample KS statistic with the 0.001 critical value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace gdd
