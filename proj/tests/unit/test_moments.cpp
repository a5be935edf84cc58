#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "gdd/moments.hpp"
#include "gdd/verification.hpp"

using namespace gdd;
using gdd::testing::kGrid;
using gdd::testing::rel_diff;

TEST_CASE("recurrence examples") {
    for (const auto& p : kGrid) {
        const auto m = moments_recurrence(p, 2);
        CHECK(m[0].value == 1.0);
        CHECK(rel_diff(m[1].value, p.mean()) < 1e-15);
        CHECK(rel_diff(m[2].value, p.variance() + p.mean() * p.mean()) < 1e-14);
    }
    CHECK(moments_recurrence(GddParams(1, 1, 1, 1), 2)[2].value == 2.0);
    CHECK(moments_recurrence(GddParams(1, 1, 1, 1), 4)[4].value == 24.0);
}

TEST_CASE("closed forms") {
    const GddParams p(2, 1.5, 0.7, 2.2);
    CHECK(moment_closed_form(p, 0, ClosedForm::first).value == 1.0);
    CHECK(moment_closed_form(p, 0, ClosedForm::second).value == 1.0);
    CHECK(rel_diff(moment_closed_form(p, 1, ClosedForm::first).value, p.mean()) < 1e-15);
    CHECK(rel_diff(moment_closed_form(p, 1, ClosedForm::second).value, p.mean()) < 1e-15);
    const double rec = moments_recurrence(p, 4)[4].value;
    CHECK(rel_diff(moment_closed_form(p, 4, ClosedForm::first).value, rec) < 1e-13);
    CHECK(rel_diff(moment_closed_form(p, 4, ClosedForm::second).value, rec) < 1e-13);
    CHECK(rel_diff(moment_binomial_oracle(p, 6).value, moments_recurrence(p, 6)[6].value) < 1e-12);
}

TEST_CASE("form-swap identity") {
    for (const auto& p : kGrid) {
        for (unsigned k = 0; k <= 10; ++k) {
            const double second = moment_closed_form(p, k, ClosedForm::second).value;
            const double first_swapped = moment_closed_form(p.swapped(), k, ClosedForm::first).value;
            CHECK(rel_diff(second, (k % 2 == 0 ? 1.0 : -1.0) * first_swapped) < 1e-12);
        }
    }
}

TEST_CASE("four-way agreement and quadrature") {
    for (const auto& p : kGrid) {
        const auto rec = moments_recurrence(p, 10);
        for (unsigned k = 0; k <= 10; ++k) {
            CHECK(moment_error(p, k, moment_closed_form(p, k, ClosedForm::first).value, rec[k].value) < 1e-10);
            CHECK(moment_error(p, k, moment_closed_form(p, k, ClosedForm::second).value, rec[k].value) < 1e-10);
            CHECK(moment_error(p, k, moment_binomial_oracle(p, k).value, rec[k].value) < 1e-10);
        }
        for (unsigned k : {1u, 3u, 6u}) {
            const auto q = moment_quadrature(p, k);
            CHECK(q.abs_error_estimate.has_value());
            CHECK(moment_error(p, k, q.value, rec[k].value) < 1e-6);
        }
    }
}

TEST_CASE("absolute moments") {
    for (const auto& p : kGrid) {
        CHECK(std::abs(abs_moment(p, 1.0).value - 1.0) < 1e-12);
        CHECK(std::abs(abs_moment_connection_form(p, 1.0).value - 1.0) < 1e-12);
    }
    CHECK(rel_diff(abs_moment(GddParams(1, 1, 1, 1), 2.0).value, 1.0) < 1e-13);
    // mpmath quadrature of |x|^(b-1) times the density, 30 digits
    CHECK(rel_diff(abs_moment(GddParams(2, 1.5, 0.7, 2.2), 0.5).value, 1.49365058590822847529) < 1e-12);
    CHECK(rel_diff(abs_moment(GddParams(0.6, 1, 0.7, 2), 1.3).value, 0.73943703671879786676) < 1e-12);
    CHECK(rel_diff(abs_moment(GddParams(5, 2, 3, 0.5), 3.7).value, 116.04734712072332530) < 1e-12);
    for (const auto& p : kGrid) {
        CHECK(rel_diff(abs_moment_connection_form(p, 1.37).value, abs_moment(p, 1.37).value) < 1e-8);
        CHECK(rel_diff(abs_moment_quadrature(p, 1.37).value, abs_moment(p, 1.37).value) < 1e-6);
        CHECK(std::abs(partial_abs_moment(p, 2.0, true) - partial_abs_moment(p, 2.0, false) - p.mean()) <
              1e-12 * abs_moment(p, 2.0).value);
        CHECK(rel_diff(partial_abs_moment(p, 2.5, true) + partial_abs_moment(p, 2.5, false),
                       abs_moment(p, 2.5).value) < 1e-14);
    }
}

TEST_CASE("even absolute moments reduce to integer moments") {
    for (const auto& p : kGrid) {
        for (unsigned k : {0u, 2u, 4u, 6u, 8u}) {
            const double closed = moment_closed_form(p, k, ClosedForm::first).value;
            CHECK(rel_diff(abs_moment(p, k + 1.0).value, closed) < 1e-9);
            CHECK(rel_diff(abs_moment_connection_form(p, k + 1.0).value, closed) < 1e-9);
        }
    }
}

TEST_CASE("absolute moment domain") {
    CHECK_THROWS_AS(abs_moment(GddParams(0.3, 1, 0.2, 1), 0.4), DomainError);
    CHECK_NOTHROW(abs_moment(GddParams(0.3, 1, 0.2, 1), 0.6));
    CHECK_THROWS_AS(abs_moment(GddParams(1, 1, 1, 1), -0.5), DomainError);
    // b + alpha2 integer with b - 1 odd: connection form refuses
    CHECK_THROWS_AS(abs_moment_connection_form(GddParams(2, 1.5, 1, 2.2), 2.0), DomainError);
}

TEST_CASE("principal-value inverse moment") {
    const auto laplace = pv_inverse_moment(GddParams(1, 1, 1, 1));
    CHECK(std::abs(laplace.value) < 1e-8);
    CHECK(laplace.abs_error_estimate.has_value());

    // mpmath principal value, 30 digits
    struct Row {
        GddParams p;
        double value;
    };
    for (const Row& r : {Row{GddParams(2, 1, 1, 1), 0.5}, Row{GddParams(2, 1.5, 0.7, 2.2), 1.24576994697},
                         Row{GddParams(0.6, 1, 0.7, 2), -0.18855282}, Row{GddParams(5, 2, 3, 0.5), -0.2525982808755}}) {
        const auto delta = pv_inverse_moment(r.p);
        const auto eps = pv_inverse_moment_eps_limit(r.p);
        CHECK(std::abs(delta.value - r.value) <= *delta.abs_error_estimate + 1e-9);
        if (r.p.shape_sum() >= 2.0) {
            CHECK(std::abs(delta.value - r.value) < 1e-6);
        }
        CHECK(std::abs(eps.value - r.value) <= *eps.abs_error_estimate);
    }
    const GddParams p(2, 1.5, 0.7, 2.2);
    CHECK(std::abs(pv_inverse_moment(p).value + pv_inverse_moment(p.swapped()).value) < 1e-8);
    CHECK(std::abs(pv_inverse_moment(GddParams(2, 1, 1, 1)).value -
                   pv_inverse_moment_eps_limit(GddParams(2, 1, 1, 1)).value) < 1e-4);
    CHECK_THROWS_AS(pv_inverse_moment(GddParams(0.4, 1, 0.5, 1)), DomainError);
}

TEST_CASE("route names") {
    CHECK(to_string(MomentRoute::recurrence) == "recurrence");
    CHECK(to_string(MomentRoute::binomial_sum) == "binomial_sum");
    CHECK(to_string(MomentRoute::connection_form) == "connection_form");
}
