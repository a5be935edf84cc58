#include <doctest.h>

#include <cmath>
#include <numbers>

#include "common.hpp"
#include "gdd/moments.hpp"
#include "gdd/specfun.hpp"
#include "gdd/variance_gamma.hpp"

using namespace gdd;
using gdd::testing::rel_diff;

TEST_CASE("parameter map") {
    CHECK(to_gdd(VgParams(2, 0, 1)) == GddParams(1, 1, 1, 1));
    const VgParams v(3, 0.5, 2);
    const GddParams p = to_gdd(v);
    CHECK(p.alpha1() == 1.5);
    CHECK(p.alpha2() == 1.5);
    const double root = std::sqrt(0.25 + 4.0);
    CHECK(rel_diff(1.0 / p.beta1(), 0.5 + root) < 1e-15);
    CHECK(rel_diff(1.0 / p.beta2(), root - 0.5) < 1e-15);
    const VgParams back = from_gdd(p);
    CHECK(rel_diff(back.r(), 3.0) < 1e-15);
    CHECK(rel_diff(back.theta(), 0.5) < 1e-14);
    CHECK(rel_diff(back.sigma(), 2.0) < 1e-14);
    CHECK_THROWS_AS(from_gdd(GddParams(1, 1, 2, 1)), DomainError);
    CHECK_THROWS_AS(VgParams(0, 0, 1), DomainError);
    CHECK_THROWS_AS(VgParams(1, 0, -1), DomainError);
    // large |theta| / sigma without cancellation
    const GddParams skew = to_gdd(VgParams(2, -1e4, 1e-3));
    CHECK(std::isfinite(skew.beta1()));
    CHECK(rel_diff(1.0 / skew.beta1() - 1.0 / skew.beta2(), -2e4) < 1e-12);
}

TEST_CASE("vg_pdf examples") {
    CHECK(rel_diff(vg_pdf(VgParams(2, 0, 1), 0.7).value, std::exp(-0.7) / 2.0) < 1e-14);
    const VgParams v(3, 0.5, 2);
    for (double x : {-1.0, 1.0}) {
        CHECK(rel_diff(vg_pdf(v, x).value, pdf(to_gdd(v), x).value) < 1e-8);
    }
    CHECK(rel_diff(vg_pdf(v, 1.0).value, 0.13937106964191792) < 1e-12);
    CHECK(rel_diff(vg_pdf(v, -1.0).value, 0.10854229817462499) < 1e-12);
    CHECK(rel_diff(vg_pdf(v, 0.0).value, pdf(to_gdd(v), 0.0).value) < 1e-12);
    CHECK_THROWS_AS(vg_pdf(VgParams(1, 0.2, 1), 0.0), PoleError);
    CHECK(std::isfinite(vg_pdf(VgParams(1, 0.2, 1), 1e-5).value));
}

TEST_CASE("vg characteristic function") {
    const VgParams v(3, 0.5, 2);
    CHECK(vg_char_fn(v, 0.0) == std::complex<double>(1.0, 0.0));
    const auto a = vg_char_fn(v, 1.3);
    const auto b = char_fn(to_gdd(v), 1.3);
    CHECK(std::abs(a - b) < 1e-14);
}

TEST_CASE("vg ODE residual and operator ratio") {
    const VgParams laplace(2, 0, 1);
    CHECK(vg_ode_residual(laplace, 1.0).scaled() < 1e-8);
    const VgParams v(3, 0.5, 2);
    const VgParams mirrored(3, -0.5, 2);
    for (double x : {0.3, 1.0, 4.0}) {
        CHECK(vg_ode_residual(v, x).scaled() <= 1e-6);
        CHECK(std::abs(vg_ode_residual(v, x).scaled() - vg_ode_residual(mirrored, -x).scaled()) < 1e-8);
    }
    const double ratio = vg_operator_ratio(v, 0.5);
    for (double x : {-3.0, -0.2, 1.0, 2.5}) {
        CHECK(rel_diff(vg_operator_ratio(v, x), ratio) < 1e-9);
    }
}

TEST_CASE("vg moments") {
    for (const VgParams& v : {VgParams(3, 0.5, 2), VgParams(1.5, -1, 0.5), VgParams(5, 0, 1)}) {
        const auto rec = vg_moments_recurrence(v, 10);
        const auto mapped = moments_recurrence(to_gdd(v), 10);
        CHECK(rec[0].value == 1.0);
        CHECK(rel_diff(rec[1].value, v.r() * v.theta()) < 1e-15);
        for (unsigned k = 0; k <= 10; ++k) {
            const double closed = vg_moment_closed_form(v, k).value;
            const double scale = std::max(std::abs(rec[k].value), 1e-4 * vg_abs_moment(v, k).value);
            CHECK(std::abs(closed - rec[k].value) <= 1e-9 * scale);
            CHECK(std::abs(mapped[k].value - rec[k].value) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("vg absolute moments") {
    CHECK(rel_diff(vg_abs_moment(VgParams(3, 0.5, 2), 0.0).value, 1.0) < 1e-14);
    CHECK(rel_diff(vg_abs_moment(VgParams(2, 0, 1), 1.0).value, 1.0) < 1e-14);
    // theta = 0 reduction
    const VgParams v(3.4, 0, 1.3);
    for (double k : {0.5, 1.0, 2.5}) {
        const double expected = std::pow(2.0 * 1.3, k) *
                                std::exp(specfun::log_gamma((3.4 + k) / 2.0) + specfun::log_gamma((k + 1.0) / 2.0) -
                                         specfun::log_gamma(1.7)) /
                                std::sqrt(std::numbers::pi);
        CHECK(rel_diff(vg_abs_moment(v, k).value, expected) < 1e-12);
    }
    for (double k : {0.5, 1.0, 2.5}) {
        const VgParams w(3, 0.5, 2);
        CHECK(rel_diff(vg_abs_moment(w, k).value, abs_moment(to_gdd(w), k + 1.0).value) < 1e-8);
    }
    CHECK_THROWS_AS(vg_abs_moment(VgParams(3, 0.5, 2), -1.0), DomainError);
}

TEST_CASE("vg Stein identity") {
    const VgParams v(3, 0.5, 2);
    for (const auto& tf : standard_battery()) {
        const auto r = vg_stein_expectation(v, tf);
        CHECK_MESSAGE(std::abs(r.value) <= 1e-7 * r.term_scale, tf.name);
    }
    CHECK(std::abs(vg_stein_expectation(v, named_test_function("one")).value) < 1e-9);
}

TEST_CASE("vg expectation normalizes") {
    for (const VgParams& v : {VgParams(1.5, -1, 0.5), VgParams(3, 0.5, 2), VgParams(5, 0, 1)}) {
        CHECK(std::abs(vg_expect(v, [](double) { return 1.0; }).value - 1.0) < 1e-8);
    }
}
