// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "common.hpp"
#include "gdd/distribution.hpp"
#include "gdd/moments.hpp"
#include "gdd/sampler.hpp"
#include "gdd/specfun.hpp"
#include "gdd/stein.hpp"
#include "gdd/variance_gamma.hpp"
#include "gdd/verification.hpp"
#include "oracles.hpp"

using namespace gdd;
using gdd::testing::kGrid;
using gdd::testing::rel_diff;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string label(const GddParams& p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%g,%g,%g,%g)", p.alpha1(), p.beta1(), p.alpha2(), p.beta2());
    return buf;
}

std::string label(const VgParams& v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "vg(%g,%g,%g)", v.r(), v.theta(), v.sigma());
    return buf;
}

// Tracks every comparison of a criterion and remembers the one closest to (or past) its threshold.
class Tally {
public:
    void add(double measured, double threshold, const std::string& where) {
        ++count_;
        const bool ok = std::isfinite(measured) && measured <= threshold;
        passed_ = passed_ && ok;
        double ratio = 0.0;
        if (!std::isfinite(measured)) {
            ratio = std::numeric_limits<double>::infinity();
        } else if (threshold > 0.0) {
            ratio = measured / threshold;
        } else if (measured > 0.0) {
            ratio = std::numeric_limits<double>::infinity();
        }
        if (count_ == 1 || ratio > worst_ratio_) {
            worst_ratio_ = ratio;
            measured_ = measured;
            threshold_ = threshold;
            where_ = where;
        }
    }
    void require(bool condition, const std::string& where) { add(condition ? 0.0 : 1.0, 0.0, where); }

    [[nodiscard]] bool passed() const { return passed_ && count_ > 0; }
    [[nodiscard]] std::string summary() const {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%d comparisons, worst %.3g vs %.3g at %s", count_, measured_, threshold_,
                      where_.c_str());
        return buf;
    }

private:
    int count_ = 0;
    bool passed_ = true;
    double worst_ratio_ = 0.0;
    double measured_ = 0.0;
    double threshold_ = 0.0;
    std::string where_;
};

std::vector<VgParams> vg_grid() {
    std::vector<VgParams> out;
    for (double r : {1.5, 2.0, 3.0, 5.0}) {
        for (double theta : {-1.0, 0.0, 0.5}) {
            for (double sigma : {0.5, 1.0, 2.0}) {
                out.emplace_back(r, theta, sigma);
            }
        }
    }
    return out;
}

const std::vector<double> kOdeMagnitudes{0.1, 0.3, 0.6, 1.0, 1.5, 2.5, 3.5, 5.0};

Tally normalization() {
    Tally t;
    for (const auto& p : kGrid) {
        const auto r = expect(p, [](double) { return 1.0; });
        t.add(std::abs(r.value - 1.0), 1e-8, label(p));
    }
    return t;
}

Tally route_agreement() {
    Tally t;
    for (const auto& p : kGrid) {
        for (double x : {-3.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 3.0}) {
            const std::string where = label(p) + " x=" + std::to_string(x);
            const double tri = pdf(p, x, DensityRoute::tricomi).value;
            const double conv = pdf(p, x, DensityRoute::convolution).value;
            t.add(rel_diff(tri, conv), 1e-6, where + " tricomi/convolution");
            if (p.shape_sum() > 1.2) {
                const double four = pdf(p, x, DensityRoute::fourier).value;
                t.add(rel_diff(tri, four), 1e-6, where + " tricomi/fourier");
                t.add(rel_diff(conv, four), 1e-6, where + " convolution/fourier");
            }
        }
    }
    return t;
}

Tally pdf_at_origin() {
    Tally t;
    for (const auto& p : kGrid) {
        if (p.shape_sum() <= 1.0) {
            continue;
        }
        const double s = p.shape_sum();
        const double closed =
            std::exp(p.alpha1() * std::log(p.beta1()) + p.alpha2() * std::log(p.beta2()) -
                     (s - 1.0) * std::log(p.beta1() + p.beta2()) + specfun::log_gamma(s - 1.0) -
                     specfun::log_gamma(p.alpha1()) - specfun::log_gamma(p.alpha2()));
        const double at_zero = pdf_at_zero(p).value;
        t.add(rel_diff(at_zero, closed), 1e-6, label(p) + " closed form");
        t.add(rel_diff(at_zero, testing::gamma_overlap_integral(p.alpha1(), p.beta1(), p.alpha2(), p.beta2())), 1e-6,
              label(p) + " overlap quadrature");
        t.add(rel_diff(at_zero, pdf(p, 0.0, DensityRoute::convolution).value), 1e-6,
              label(p) + " convolution route");
    }
    t.add(std::abs(pdf_at_zero(GddParams(1, 1, 1, 1)).value - 0.5), 0.0, "Laplace exact");
    return t;
}

Tally moment_consistency() {
    Tally t;
    for (const auto& p : kGrid) {
        const auto rec = moments_recurrence(p, 10);
        for (unsigned k = 0; k <= 10; ++k) {
            const std::string where = label(p) + " k=" + std::to_string(k);
            const double m = rec[k].value;
            t.add(moment_error(p, k, moment_closed_form(p, k, ClosedForm::first).value, m), 1e-10, where + " first");
            t.add(moment_error(p, k, moment_closed_form(p, k, ClosedForm::second).value, m), 1e-10,
                  where + " second");
            t.add(moment_error(p, k, moment_binomial_oracle(p, k).value, m), 1e-10, where + " binomial");
            t.add(moment_error(p, k, moment_quadrature(p, k).value, m), 1e-6, where + " quadrature");
        }
    }
    return t;
}

Tally absolute_moments() {
    Tally t;
    for (const auto& p : kGrid) {
        for (double b : {0.5, 1.3, 2.0, 3.7}) {
            if (b <= std::max(0.0, 1.0 - p.shape_sum())) {
                continue;
            }
            const std::string where = label(p) + " b=" + std::to_string(b);
            t.add(rel_diff(abs_moment(p, b).value, abs_moment_quadrature(p, b).value), 1e-6, where);
        }
        t.add(std::abs(abs_moment(p, 1.0).value - 1.0), 1e-9, label(p) + " b=1");
        t.add(std::abs(abs_moment_connection_form(p, 1.0).value - 1.0), 1e-9, label(p) + " b=1 connection");
        for (unsigned k : {0u, 2u, 4u, 6u, 8u}) {
            t.add(rel_diff(abs_moment_connection_form(p, k + 1.0).value,
                           moment_closed_form(p, k, ClosedForm::first).value),
                  1e-9, label(p) + " even k=" + std::to_string(k));
        }
    }
    return t;
}

Tally ode_residuals() {
    Tally t;
    for (const auto& p : kGrid) {
        if (p.shape_sum() <= 1.0) {
            continue;
        }
        for (double m : kOdeMagnitudes) {
            for (double x : {-m, m}) {
                t.add(ode_residual(p, x).scaled(), 1e-6, label(p) + " x=" + std::to_string(x));
            }
        }
    }
    return t;
}

Tally stein_identity() {
    Tally t;
    for (const auto& p : kGrid) {
        for (const auto& tf : standard_battery()) {
            const auto r = stein_expectation(p, tf);
            t.require(r.converged, label(p) + " " + tf.name + " converged");
            t.add(std::abs(r.value), 1e-7 * r.term_scale, label(p) + " " + tf.name);
        }
    }
    return t;
}

Tally charfn_ode() {
    Tally t;
    for (const auto& p : kGrid) {
        for (double s : {0.0, 0.5, 1.0, 2.0}) {
            t.add(charfn_ode_check(p, s), 1e-8, label(p) + " t=" + std::to_string(s));
        }
    }
    return t;
}

Tally vg_specialization() {
    Tally t;
    for (const auto& v : vg_grid()) {
        const GddParams p = to_gdd(v);
        for (double x : {-4.0, -1.0, -0.2, 0.0, 0.2, 1.0, 4.0}) {
            t.add(rel_diff(vg_pdf(v, x).value, pdf(p, x).value), 1e-8, label(v) + " x=" + std::to_string(x));
        }
    }
    const VgParams laplace(2, 0, 1);
    for (double x : {-3.0, -1.0, -0.2, 0.0, 0.5, 2.0, 5.0}) {
        t.add(std::abs(vg_pdf(laplace, x).value - 0.5 * std::exp(-std::abs(x))), 1e-10,
              "Laplace x=" + std::to_string(x));
    }
    return t;
}

Tally vg_moments() {
    Tally t;
    for (const auto& v : vg_grid()) {
        const auto rec = vg_moments_recurrence(v, 10);
        const auto mapped = moments_recurrence(to_gdd(v), 10);
        for (unsigned k = 0; k <= 10; ++k) {
            const std::string where = label(v) + " k=" + std::to_string(k);
            // vanishing moments are compared against a floor tied to the moment's magnitude
            const double scale = std::max(std::abs(rec[k].value), 1e-4 * vg_abs_moment(v, k).value);
            t.add(std::abs(vg_moment_closed_form(v, k).value - rec[k].value) / scale, 1e-9, where + " closed");
            t.add(std::abs(mapped[k].value - rec[k].value) / scale, 1e-9, where + " mapped");
        }
        const double r_theta = v.r() * v.theta();
        t.add(std::abs(rec[1].value - r_theta), 2.0 * kEps * std::abs(r_theta), label(v) + " m1");
        for (double k : {0.5, 1.0, 2.5}) {
            t.add(rel_diff(vg_abs_moment(v, k).value, abs_moment(to_gdd(v), k + 1.0).value), 1e-8,
                  label(v) + " abs k=" + std::to_string(k));
        }
    }
    return t;
}

Tally vg_ode_and_stein() {
    Tally t;
    for (const auto& v : vg_grid()) {
        for (double m : kOdeMagnitudes) {
            for (double x : {-m, m}) {
                t.add(vg_ode_residual(v, x).scaled(), 1e-6, label(v) + " ode x=" + std::to_string(x));
            }
        }
        for (const auto& tf : standard_battery()) {
            const auto r = vg_stein_expectation(v, tf);
            t.require(r.converged, label(v) + " " + tf.name + " converged");
            t.add(std::abs(r.value), 1e-7 * r.term_scale, label(v) + " stein " + tf.name);
        }
    }
    return t;
}

Tally sampling() {
    Tally t;
    SamplerState state(20240601);
    constexpr std::size_t n = 1'000'000;
    for (const auto& p : kGrid) {
        const auto xs = sample_gdd(state, p, n);
        const auto m = moments_recurrence(p, 8);
        for (unsigned k = 1; k <= 4; ++k) {
            t.add(std::abs(check_moment(xs, k, m[k].value, m[2 * k].value).z_score()), 5.0,
                  label(p) + " k=" + std::to_string(k));
        }
        const auto ks = ks_one_sample(sample_gdd(state, p, 100'000), p);
        t.add(ks.statistic, ks.critical, label(p) + " KS vs cdf");
    }
    for (const VgParams& v : {VgParams(3, 0.5, 2), VgParams(1.5, -1, 0.5), VgParams(5, 0, 1)}) {
        const auto mixture = sample_vg(state, v, n, VgSamplingRoute::normal_mixture);
        const auto difference = sample_vg(state, v, n, VgSamplingRoute::gamma_difference);
        const auto m = vg_moments_recurrence(v, 8);
        for (unsigned k = 1; k <= 4; ++k) {
            t.add(std::abs(check_moment(mixture, k, m[k].value, m[2 * k].value).z_score()), 5.0,
                  label(v) + " mixture k=" + std::to_string(k));
            t.add(std::abs(check_moment(difference, k, m[k].value, m[2 * k].value).z_score()), 5.0,
                  label(v) + " difference k=" + std::to_string(k));
        }
        const auto ks = ks_two_sample(mixture, difference);
        t.add(ks.statistic, ks.critical, label(v) + " two-route KS");
    }
    return t;
}

Tally principal_value() {
    Tally t;
    t.add(std::abs(pv_inverse_moment(GddParams(1, 1, 1, 1)).value), 1e-8, "Laplace");
    const GddParams p(2, 1, 1, 1);
    t.add(std::abs(pv_inverse_moment(p).value - pv_inverse_moment_eps_limit(p).value), 1e-4,
          label(p) + " delta vs eps");
    return t;
}

Tally special_functions() {
    using namespace gdd::specfun;
    Tally t;
    for (unsigned k = 0; k <= 12; ++k) {
        for (double b : {0.7, 2.5, -3.3}) {
            for (double c : {1.4, -12.5, 3.9}) {
                for (double z : {-2.0, -0.4, 0.3, 0.8, 1.5}) {
                    long double term = 1.0L;
                    long double sum = 1.0L;
                    for (unsigned l = 0; l < k; ++l) {
                        const long double dl = l;
                        term *= (dl - k) * (b + dl) / ((c + dl) * (dl + 1.0L)) * z;
                        sum += term;
                    }
                    t.add(rel_diff(gauss_2f1(-static_cast<double>(k), b, c, z).value, static_cast<double>(sum)),
                          1e-12, "terminating 2F1 k=" + std::to_string(k));
                }
            }
        }
    }
    for (double a : {-1.5, 0.3, 1.0, 2.7}) {
        for (double b : {0.4, 1.5, 3.2}) {
            for (double z : {-20.0, -7.5, -1.0, 0.5, 4.0, 12.0, 20.0}) {
                t.add(rel_diff(kummer_m(a, b, z).value, std::exp(z) * kummer_m(b - a, b, -z).value), 1e-9,
                      "Kummer transform z=" + std::to_string(z));
            }
        }
    }
    for (double a : {0.2, 0.8, 1.5, 3.1}) {
        for (double b : {-2.6, -1.3, -0.4, 0.3, 0.75, 1.5, 2.2}) {
            for (double z : {0.05, 0.6, 2.0, 7.5}) {
                t.add(rel_diff(tricomi_u(a, b, z).value, testing::tricomi_integral(a, b, z)), 1e-8,
                      "Tricomi U connection a=" + std::to_string(a) + " b=" + std::to_string(b));
            }
        }
    }
    t.add(rel_diff(tricomi_u(0.3, -0.4, 1.7).value, testing::tricomi_integral(0.3, -0.4, 1.7)), 1e-8,
          "U(0.3,-0.4,1.7)");
    for (double a1 : {0.1, 0.5, 1.0, 1.7, 3.0, 5.0}) {
        for (unsigned k = 0; k <= 12; ++k) {
            for (unsigned l = 0; l <= k; ++l) {
                t.require(pochhammer(-(a1 + k - 1.0), l) != 0.0, "Pochhammer non-vanishing");
            }
        }
    }
    for (int n = 0; n <= 3; ++n) {
        for (double z : {0.1, 1.0, 10.0}) {
            t.add(rel_diff(bessel_k(0.5 + n, z).value, testing::bessel_integral(0.5 + n, z)), 1e-9,
                  "K half-odd n=" + std::to_string(n) + " z=" + std::to_string(z));
        }
    }
    t.add(rel_diff(bessel_k(0.0, 1.0).value, testing::bessel_integral(0.0, 1.0)), 1e-9, "K_0(1)");
    return t;
}

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str()};
}

std::vector<std::string> gdd_flags(const GddParams& p) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    return {"--alpha1", num(p.alpha1()), "--beta1", num(p.beta1()), "--alpha2", num(p.alpha2()), "--beta2",
            num(p.beta2())};
}

// Value column of every CSV body row (fourth field from the end).
std::vector<std::string> csv_values(const std::string& text) {
    std::vector<std::string> values;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        values.push_back(fields[fields.size() - 4]);
    }
    return values;
}

Tally command_line() {
    Tally t;
    for (const auto& p : kGrid) {
        auto args = gdd_flags(p);
        args.insert(args.begin(), "verify");
        t.add(cli(args).code, 0.0, "verify " + label(p));
    }
    auto forced = gdd_flags(kGrid[0]);
    forced.insert(forced.begin(), "verify");
    forced.insert(forced.end(), {"--tol-scale", "1e-30"});
    t.require(cli(forced).code == cli::kVerificationFailure, "forced verification failure");

    std::vector<std::vector<std::string>> commands;
    for (const auto& p : kGrid) {
        auto pdf_args = gdd_flags(p);
        pdf_args.insert(pdf_args.begin(), "pdf");
        pdf_args.insert(pdf_args.end(), {"--x-min", "-3", "--x-max", "3", "--n", "8"});
        commands.push_back(pdf_args);
        auto mom_args = gdd_flags(p);
        mom_args.insert(mom_args.begin(), "moments");
        mom_args.insert(mom_args.end(), {"--k-max", "10", "--route", "all"});
        commands.push_back(mom_args);
    }
    commands.push_back({"vg", "--r", "3", "--theta", "0.5", "--sigma", "2", "pdf", "--x-min", "-4", "--x-max", "4",
                        "--n", "9"});
    commands.push_back({"sample", "--n", "200", "--seed", "77", "--alpha1", "2", "--beta1", "1.5", "--alpha2", "0.7",
                        "--beta2", "2.2"});
    for (const auto& c : commands) {
        const auto csv = cli(c);
        auto json_args = c;
        json_args.insert(json_args.end(), {"--format", "json"});
        const auto js = cli(json_args);
        const auto values = csv_values(csv.out);
        const auto doc = nlohmann::json::parse(js.out);
        const std::string where = c[0] + " " + (c.size() > 2 ? c[2] : "");
        t.require(csv.code == 0 && js.code == 0, where + " exit codes");
        t.require(values.size() == doc.size(), where + " record counts");
        for (std::size_t i = 0; i < std::min(values.size(), doc.size()); ++i) {
            const double from_csv = std::strtod(values[i].c_str(), nullptr);
            const double from_json = doc[i]["value"].is_null() ? NAN : doc[i]["value"].get<double>();
            t.require(from_csv == from_json, where + " record " + std::to_string(i));
        }
    }
    return t;
}

struct Criterion {
    int number;
    const char* name;
    std::function<Tally()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "normalization", normalization},
        {2, "density route agreement", route_agreement},
        {3, "density at the origin", pdf_at_origin},
        {4, "integer moment consistency", moment_consistency},
        {5, "absolute moments", absolute_moments},
        {6, "density ODE residual", ode_residuals},
        {7, "Stein identity", stein_identity},
        {8, "characteristic-function ODE", charfn_ode},
        {9, "variance gamma density", vg_specialization},
        {10, "variance gamma moments", vg_moments},
        {11, "variance gamma ODE and Stein identity", vg_ode_and_stein},
        {12, "sampling", sampling},
        {13, "principal-value inverse moment", principal_value},
        {14, "special-function kernel", special_functions},
        {15, "command line", command_line},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        bool passed = false;
        std::string detail;
        try {
            const Tally t = c.run();
            passed = t.passed();
            detail = t.summary();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %2d  %-38s %s  [%.2f s]\n", passed ? "PASS" : "FAIL", c.number, c.name, detail.c_str(),
                    seconds);
        std::fflush(stdout);
        failures += passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
