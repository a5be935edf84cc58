#include "gdd/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace gdd {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void apply_jump(std::array<std::uint64_t, 4>& s, const std::array<std::uint64_t, 4>& table, Xoshiro256& gen) {
    std::array<std::uint64_t, 4> acc{};
    for (const std::uint64_t word : table) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b)) {
                for (int i = 0; i < 4; ++i) {
                    acc[i] ^= s[i];
                }
            }
            gen.next();
        }
    }
    s = acc;
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) {
        word = splitmix64(x);
    }
}

std::uint64_t Xoshiro256::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

void Xoshiro256::jump() {
    static constexpr std::array<std::uint64_t, 4> kJump{0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                       0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    apply_jump(s_, kJump, *this);
}

void Xoshiro256::long_jump() {
    static constexpr std::array<std::uint64_t, 4> kLongJump{0x76e15d3efefdcbbfULL, 0xc5004e441c522fb3ULL,
                                                           0x77710069854ee241ULL, 0x39109bb02acbe635ULL};
    apply_jump(s_, kLongJump, *this);
}

double SamplerState::uniform() {
    ++position_;
    return engine_.uniform();
}

double SamplerState::normal() {
    if (spare_normal_) {
        const double v = *spare_normal_;
        spare_normal_.reset();
        return v;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    return u * f;
}

std::array<SamplerState, 2> SamplerState::split() {
    Xoshiro256 first = engine_;
    first.jump();
    Xoshiro256 second = first;
    second.jump();
    engine_.long_jump();
    spare_normal_.reset();
    return {SamplerState(seed_, first), SamplerState(seed_, second)};
}

double draw_gamma(SamplerState& state, double alpha, double beta) {
    detail::require(std::isfinite(alpha) && alpha > 0.0, "gamma shape must be finite and positive");
    detail::require(std::isfinite(beta) && beta > 0.0, "gamma rate must be finite and positive");
    double boost = 1.0;
    if (alpha < 1.0) {
        boost = std::pow(state.uniform(), 1.0 / alpha);
        alpha += 1.0;
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = state.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = state.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return boost * d * v / beta;
        }
    }
}

std::vector<double> sample_gamma(SamplerState& state, double alpha, double beta, std::size_t n) {
    detail::require(std::isfinite(alpha) && alpha > 0.0, "gamma shape must be finite and positive");
    detail::require(std::isfinite(beta) && beta > 0.0, "gamma rate must be finite and positive");
    std::vector<double> out(n);
    for (double& x : out) {
        x = draw_gamma(state, alpha, beta);
    }
    return out;
}

std::vector<double> sample_gdd(SamplerState& state, const GddParams& params, std::size_t n) {
    auto [s1, s2] = state.split();
    std::vector<double> out(n);
    for (double& x : out) {
        x = draw_gamma(s1, params.alpha1(), params.beta1());
    }
    for (double& x : out) {
        x -= draw_gamma(s2, params.alpha2(), params.beta2());
    }
    return out;
}

std::vector<double> sample_vg(SamplerState& state, const VgParams& vg, std::size_t n, VgSamplingRoute route) {
    if (route == VgSamplingRoute::gamma_difference) {
        return sample_gdd(state, to_gdd(vg), n);
    }
    auto [mixing, noise] = state.split();
    std::vector<double> out(n);
    for (double& y : out) {
        const double a = draw_gamma(mixing, 0.5 * vg.r(), 0.5);
        y = vg.theta() * a + vg.sigma() * std::sqrt(a) * noise.normal();
    }
    return out;
}

MomentCheck check_moment(std::span<const double> samples, unsigned k, double analytic_k, double analytic_2k) {
    detail::require(!samples.empty(), "moment check needs samples");
    double sum = 0.0;
    for (const double x : samples) {
        double p = 1.0;
        for (unsigned i = 0; i < k; ++i) {
            p *= x;
        }
        sum += p;
    }
    const double n = static_cast<double>(samples.size());
    const double var = std::max(analytic_2k - analytic_k * analytic_k, 0.0);
    return {k, sum / n, analytic_k, std::sqrt(var / n)};
}

KsResult ks_one_sample(std::vector<double> samples, const GddParams& params) {
    detail::require(!samples.empty(), "KS test needs samples");
    std::sort(samples.begin(), samples.end());
    const std::vector<double> f = cdf_sorted(params, samples);
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(f[i] - lo), std::abs(hi - f[i])});
    }
    return {d, kKsCritical001 / std::sqrt(n)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    detail::require(!a.empty() && !b.empty(), "KS test needs samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return {d, kKsCritical001 * std::sqrt((na + nb) / (na * nb))};
}

}  // namespace gdd
