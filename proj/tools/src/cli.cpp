#include "cli.hpp"

#include <CLI11.hpp>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "gdd/distribution.hpp"
#include "gdd/moments.hpp"
#include "gdd/sampler.hpp"
#include "gdd/stein.hpp"
#include "gdd/variance_gamma.hpp"
#include "gdd/verification.hpp"

namespace gdd::cli {

namespace {

using json = nlohmann::json;

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const std::string& flag) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ArgumentError(flag + ": expected a finite number, got '" + text + "'");
    }
    return v;
}

unsigned long long parse_count(const std::string& text, const std::string& flag) {
    const bool digits = !text.empty() && text.find_first_not_of("0123456789") == std::string::npos;
    if (!digits || text.size() > 19) {
        throw ArgumentError(flag + ": expected a non-negative integer, got '" + text + "'");
    }
    return std::stoull(text);
}

quadrature::Options quadrature_options() {
    quadrature::Options opts;
    if (const char* env = std::getenv("GDD_DEFAULT_TOL")) {
        const double tol = parse_real(env, "GDD_DEFAULT_TOL");
        if (tol <= 0.0) {
            throw ArgumentError("GDD_DEFAULT_TOL must be positive");
        }
        opts.rel_tol = tol;
    }
    return opts;
}

enum class Status { ok, non_converged, domain_error, failed };

const char* status_name(Status s) {
    switch (s) {
        case Status::ok:
            return "ok";
        case Status::non_converged:
            return "non_converged";
        case Status::domain_error:
            return "domain_error";
        case Status::failed:
            return "failed";
    }
    return "unknown";
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Streams one record per call as a CSV row or a JSON array element.
class Emitter {
public:
    Emitter(std::ostream& out, bool as_json, std::vector<std::string> input_names)
        : out_(out), json_(as_json), names_(std::move(input_names)) {
        if (json_) {
            out_ << "[";
        } else {
            for (const auto& n : names_) {
                out_ << n << ',';
            }
            out_ << "value,route,abs_error,status\n";
        }
    }

    void emit(const std::vector<json>& inputs, std::optional<double> value, std::string_view route,
              std::optional<double> abs_error, Status status) {
        if (status == Status::domain_error) {
            ++domain_errors_;
        } else if (status == Status::non_converged) {
            ++non_converged_;
        } else if (status == Status::failed) {
            ++failed_;
        }
        if (json_) {
            json rec;
            json in = json::object();
            for (std::size_t i = 0; i < names_.size(); ++i) {
                in[names_[i]] = inputs[i];
            }
            rec["inputs"] = in;
            rec["value"] = value && std::isfinite(*value) ? json(*value) : json(nullptr);
            rec["route"] = route;
            rec["abs_error"] = abs_error && std::isfinite(*abs_error) ? json(*abs_error) : json(nullptr);
            rec["status"] = status_name(status);
            out_ << (first_ ? "\n" : ",\n") << rec.dump();
        } else {
            for (const json& v : inputs) {
                if (v.is_number_float()) {
                    out_ << format_real(v.get<double>());
                } else if (v.is_string()) {
                    out_ << v.get<std::string>();
                } else {
                    out_ << v.dump();
                }
                out_ << ',';
            }
            out_ << (value ? format_real(*value) : "") << ',' << route << ','
                 << (abs_error ? format_real(*abs_error) : "") << ',' << status_name(status) << '\n';
        }
        first_ = false;
        out_.flush();
    }

    int finish() {
        if (json_) {
            out_ << (first_ ? "]\n" : "\n]\n");
        }
        if (domain_errors_ > 0) {
            return kDomainError;
        }
        if (non_converged_ > 0) {
            return kNonConvergence;
        }
        if (failed_ > 0) {
            return kVerificationFailure;
        }
        return kOk;
    }

private:
    std::ostream& out_;
    bool json_;
    std::vector<std::string> names_;
    bool first_ = true;
    int domain_errors_ = 0;
    int non_converged_ = 0;
    int failed_ = 0;
};

struct Evaluation {
    double value;
    std::optional<double> abs_error;
    bool converged;
};

// Runs one evaluation and emits it, turning library errors into record statuses.
void guarded(Emitter& em, std::ostream& err, const std::vector<json>& inputs, std::string_view route,
             const std::function<Evaluation()>& fn) {
    try {
        const Evaluation e = fn();
        em.emit(inputs, e.value, route, e.abs_error, e.converged ? Status::ok : Status::non_converged);
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        em.emit(inputs, std::nullopt, route, std::nullopt, Status::domain_error);
    } catch (const quadrature::NonFiniteIntegrand& e) {
        err << "integration failed: " << e.what() << '\n';
        em.emit(inputs, std::nullopt, route, std::nullopt, Status::non_converged);
    }
}

Evaluation from_special(const SpecialValue& v) { return {v.value, v.abs_error_estimate, v.converged}; }

Evaluation from_report(const MomentReport& r) { return {r.value, r.abs_error_estimate, true}; }

struct GddFlags {
    std::string alpha1;
    std::string beta1;
    std::string alpha2;
    std::string beta2;

    void add(CLI::App* app, bool required = true) {
        for (auto [name, target] : {std::pair{"--alpha1", &alpha1}, std::pair{"--beta1", &beta1},
                                    std::pair{"--alpha2", &alpha2}, std::pair{"--beta2", &beta2}}) {
            auto* opt = app->add_option(name, *target, "gamma difference parameter");
            if (required) {
                opt->required();
            }
        }
    }
    [[nodiscard]] bool given() const {
        return !alpha1.empty() || !beta1.empty() || !alpha2.empty() || !beta2.empty();
    }
    [[nodiscard]] GddParams params() const {
        const double a1 = parse_real(alpha1, "--alpha1");
        const double b1 = parse_real(beta1, "--beta1");
        const double a2 = parse_real(alpha2, "--alpha2");
        const double b2 = parse_real(beta2, "--beta2");
        return {a1, b1, a2, b2};
    }
    static std::vector<std::string> names() { return {"alpha1", "beta1", "alpha2", "beta2"}; }
    static std::vector<json> values(const GddParams& p) { return {p.alpha1(), p.beta1(), p.alpha2(), p.beta2()}; }
};

struct VgFlags {
    std::string r;
    std::string theta;
    std::string sigma;

    void add(CLI::App* app, bool required = true) {
        for (auto [name, target] :
             {std::pair{"--r", &r}, std::pair{"--theta", &theta}, std::pair{"--sigma", &sigma}}) {
            auto* opt = app->add_option(name, *target, "variance gamma parameter");
            if (required) {
                opt->required();
            }
        }
    }
    [[nodiscard]] VgParams params() const {
        const double rv = parse_real(r, "--r");
        const double tv = parse_real(theta, "--theta");
        const double sv = parse_real(sigma, "--sigma");
        return {rv, tv, sv};
    }
    static std::vector<std::string> names() { return {"r", "theta", "sigma"}; }
    static std::vector<json> values(const VgParams& v) { return {v.r(), v.theta(), v.sigma()}; }
};

// A single abscissa (--x) or an evenly spaced grid (--x-min --x-max --n).
struct GridFlags {
    std::string name;
    std::string single;
    std::string lo;
    std::string hi;
    std::string n;

    void add(CLI::App* app, const std::string& var) {
        name = var;
        app->add_option("--" + var, single, "single abscissa");
        app->add_option("--" + var + "-min", lo, "grid start");
        app->add_option("--" + var + "-max", hi, "grid end");
        app->add_option("--n", n, "grid size");
    }
    [[nodiscard]] std::vector<double> points() const {
        const bool grid = !lo.empty() || !hi.empty() || !n.empty();
        if (!single.empty() && grid) {
            throw ArgumentError("give either --" + name + " or --" + name + "-min/--" + name + "-max/--n, not both");
        }
        if (!single.empty()) {
            return {parse_real(single, "--" + name)};
        }
        if (lo.empty() || hi.empty() || n.empty()) {
            throw ArgumentError("need --" + name + " or all of --" + name + "-min, --" + name + "-max, --n");
        }
        const double a = parse_real(lo, "--" + name + "-min");
        const double b = parse_real(hi, "--" + name + "-max");
        const unsigned long long count = parse_count(n, "--n");
        if (count == 0) {
            throw ArgumentError("--n must be at least 1");
        }
        std::vector<double> out;
        out.reserve(count);
        for (unsigned long long i = 0; i < count; ++i) {
            out.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
        }
        return out;
    }
};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<json> with(std::vector<json> a, const std::vector<json>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

const std::vector<std::string> kTestFunctions{"one", "x", "x2", "x3", "sin", "cos", "gauss", "lorentz"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gamma difference distribution: densities, moments, identities and sampling", "gdd"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string format = "csv";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

    GddFlags pdf_p;
    GridFlags pdf_x;
    std::string pdf_route = "tricomi";
    auto* pdf_cmd = app.add_subcommand("pdf", "density");
    pdf_p.add(pdf_cmd);
    pdf_x.add(pdf_cmd, "x");
    pdf_cmd->add_option("--route", pdf_route)->check(CLI::IsMember({"tricomi", "convolution", "fourier", "polynomial"}));

    GddFlags cdf_p;
    GridFlags cdf_x;
    auto* cdf_cmd = app.add_subcommand("cdf", "distribution function");
    cdf_p.add(cdf_cmd);
    cdf_x.add(cdf_cmd, "x");

    GddFlags cf_p;
    GridFlags cf_t;
    auto* cf_cmd = app.add_subcommand("charfn", "characteristic function, real and imaginary parts");
    cf_p.add(cf_cmd);
    cf_t.add(cf_cmd, "t");

    GddFlags mom_p;
    std::string mom_k;
    std::string mom_route = "recurrence";
    auto* mom_cmd = app.add_subcommand("moments", "integer moments m_0 .. m_kmax");
    mom_p.add(mom_cmd);
    mom_cmd->add_option("--k-max", mom_k)->required();
    mom_cmd->add_option("--route", mom_route)
        ->check(CLI::IsMember({"recurrence", "closed", "binomial", "quadrature", "all"}));

    GddFlags abs_p;
    std::string abs_b;
    std::string abs_route = "closed";
    auto* abs_cmd = app.add_subcommand("absmoment", "absolute moment E|X|^(b-1)");
    abs_p.add(abs_cmd);
    abs_cmd->add_option("--b", abs_b)->required();
    abs_cmd->add_option("--route", abs_route)->check(CLI::IsMember({"closed", "connection", "quadrature", "all"}));

    GddFlags pv_p;
    std::string pv_route = "all";
    auto* pv_cmd = app.add_subcommand("pvmoment", "principal value of E[1/X]");
    pv_p.add(pv_cmd);
    pv_cmd->add_option("--route", pv_route)->check(CLI::IsMember({"delta", "eps", "all"}));

    GddFlags st_p;
    std::string st_g;
    auto* st_cmd = app.add_subcommand("stein", "Stein identity expectation");
    st_p.add(st_cmd);
    st_cmd->add_option("--g", st_g)->required()->check(CLI::IsMember(kTestFunctions));

    GddFlags ode_p;
    GridFlags ode_x;
    auto* ode_cmd = app.add_subcommand("odecheck", "scaled density ODE residuals");
    ode_p.add(ode_cmd);
    ode_x.add(ode_cmd, "x");

    VgFlags vg_p;
    auto* vg_cmd = app.add_subcommand("vg", "variance gamma specialization");
    vg_p.add(vg_cmd);
    vg_cmd->require_subcommand(1, 1);
    GridFlags vg_pdf_x;
    auto* vg_pdf_cmd = vg_cmd->add_subcommand("pdf", "Bessel-form density");
    vg_pdf_x.add(vg_pdf_cmd, "x");
    std::string vg_mom_k;
    std::string vg_mom_route = "recurrence";
    auto* vg_mom_cmd = vg_cmd->add_subcommand("moments", "integer moments");
    vg_mom_cmd->add_option("--k-max", vg_mom_k)->required();
    vg_mom_cmd->add_option("--route", vg_mom_route)->check(CLI::IsMember({"recurrence", "closed", "gdd", "all"}));
    std::string vg_abs_k;
    auto* vg_abs_cmd = vg_cmd->add_subcommand("absmoment", "absolute moment E|Y|^k");
    vg_abs_cmd->add_option("--k", vg_abs_k)->required();
    std::string vg_st_g;
    auto* vg_st_cmd = vg_cmd->add_subcommand("stein", "Stein identity expectation");
    vg_st_cmd->add_option("--g", vg_st_g)->required()->check(CLI::IsMember(kTestFunctions));
    GridFlags vg_ode_x;
    auto* vg_ode_cmd = vg_cmd->add_subcommand("odecheck", "scaled ODE residuals");
    vg_ode_x.add(vg_ode_cmd, "x");
    auto* vg_map_cmd = vg_cmd->add_subcommand("map", "gamma difference parameters of the law");

    GddFlags smp_p;
    VgFlags smp_vg;
    std::string smp_n;
    std::string smp_seed;
    std::string smp_law = "gdd";
    std::string smp_vg_route = "mixture";
    auto* smp_cmd = app.add_subcommand("sample", "random variates");
    smp_p.add(smp_cmd, false);
    smp_vg.add(smp_cmd, false);
    smp_cmd->add_option("--n", smp_n)->required();
    smp_cmd->add_option("--seed", smp_seed)->required();
    smp_cmd->add_option("--law", smp_law)->check(CLI::IsMember({"gdd", "vg"}));
    smp_cmd->add_option("--vg-route", smp_vg_route)->check(CLI::IsMember({"mixture", "gdd"}));

    GddFlags ver_p;
    std::string ver_scale = "1";
    auto* ver_cmd = app.add_subcommand("verify", "cross-route verification suite");
    ver_p.add(ver_cmd);
    ver_cmd->add_option("--tol-scale", ver_scale, "multiplier applied to every threshold");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kArgumentError;
    }

    const bool as_json = format == "json";
    try {
        const quadrature::Options qopts = quadrature_options();

        if (pdf_cmd->parsed() || cdf_cmd->parsed()) {
            const bool is_pdf = pdf_cmd->parsed();
            const GddParams p = (is_pdf ? pdf_p : cdf_p).params();
            const std::vector<double> xs = (is_pdf ? pdf_x : cdf_x).points();
            const DensityRoute route = parse_density_route(pdf_route);
            Emitter em(out, as_json, concat(GddFlags::names(), {"x"}));
            for (const double x : xs) {
                if (is_pdf) {
                    guarded(em, err, with(GddFlags::values(p), {x}), to_string(route),
                            [&] { return from_special(pdf(p, x, route, qopts)); });
                } else {
                    guarded(em, err, with(GddFlags::values(p), {x}), "quadrature",
                            [&] { return from_special(cdf(p, x, qopts)); });
                }
            }
            return em.finish();
        }

        if (cf_cmd->parsed()) {
            const GddParams p = cf_p.params();
            const std::vector<double> ts = cf_t.points();
            Emitter em(out, as_json, concat(GddFlags::names(), {"t", "part"}));
            for (const double t : ts) {
                const std::complex<double> phi = char_fn(p, t);
                em.emit(with(GddFlags::values(p), {t, "re"}), phi.real(), "closed_form", std::nullopt, Status::ok);
                em.emit(with(GddFlags::values(p), {t, "im"}), phi.imag(), "closed_form", std::nullopt, Status::ok);
            }
            return em.finish();
        }

        if (mom_cmd->parsed()) {
            const GddParams p = mom_p.params();
            const auto k_max = static_cast<unsigned>(parse_count(mom_k, "--k-max"));
            if (k_max > 50) {
                throw ArgumentError("--k-max above 50 is not supported");
            }
            const bool all = mom_route == "all";
            const auto rec = moments_recurrence(p, k_max);
            Emitter em(out, as_json, concat(GddFlags::names(), {"k"}));
            for (unsigned k = 0; k <= k_max; ++k) {
                const auto in = with(GddFlags::values(p), {k});
                if (all || mom_route == "recurrence") {
                    em.emit(in, rec[k].value, to_string(rec[k].route), std::nullopt, Status::ok);
                }
                if (all || mom_route == "closed") {
                    for (const ClosedForm which : {ClosedForm::first, ClosedForm::second}) {
                        const MomentReport r = moment_closed_form(p, k, which);
                        em.emit(in, r.value, to_string(r.route), std::nullopt, Status::ok);
                    }
                }
                if (all || mom_route == "binomial") {
                    const MomentReport r = moment_binomial_oracle(p, k);
                    em.emit(in, r.value, to_string(r.route), std::nullopt, Status::ok);
                }
                if (all || mom_route == "quadrature") {
                    guarded(em, err, in, "quadrature", [&] { return from_report(moment_quadrature(p, k, qopts)); });
                }
            }
            return em.finish();
        }

        if (abs_cmd->parsed()) {
            const GddParams p = abs_p.params();
            const double b = parse_real(abs_b, "--b");
            const bool all = abs_route == "all";
            Emitter em(out, as_json, concat(GddFlags::names(), {"b"}));
            const auto in = with(GddFlags::values(p), {b});
            if (all || abs_route == "closed") {
                guarded(em, err, in, "closed_form", [&] { return from_report(abs_moment(p, b)); });
            }
            if (all || abs_route == "connection") {
                guarded(em, err, in, "connection_form",
                        [&] { return from_report(abs_moment_connection_form(p, b)); });
            }
            if (all || abs_route == "quadrature") {
                guarded(em, err, in, "quadrature", [&] { return from_report(abs_moment_quadrature(p, b, qopts)); });
            }
            return em.finish();
        }

        if (pv_cmd->parsed()) {
            const GddParams p = pv_p.params();
            Emitter em(out, as_json, GddFlags::names());
            const auto in = GddFlags::values(p);
            if (pv_route != "eps") {
                guarded(em, err, in, "pv_quadrature", [&] { return from_report(pv_inverse_moment(p, qopts)); });
            }
            if (pv_route != "delta") {
                guarded(em, err, in, "pv_analytic_limit",
                        [&] { return from_report(pv_inverse_moment_eps_limit(p)); });
            }
            return em.finish();
        }

        if (st_cmd->parsed()) {
            const GddParams p = st_p.params();
            const TestFunction tf = named_test_function(st_g);
            Emitter em(out, as_json, concat(GddFlags::names(), {"g"}));
            guarded(em, err, with(GddFlags::values(p), {st_g}), "quadrature", [&] {
                const SteinResult r = stein_expectation(p, tf, qopts);
                return Evaluation{r.value, r.abs_error_estimate, r.converged};
            });
            return em.finish();
        }

        if (ode_cmd->parsed()) {
            const GddParams p = ode_p.params();
            const std::vector<double> xs = ode_x.points();
            Emitter em(out, as_json, concat(GddFlags::names(), {"x"}));
            for (const double x : xs) {
                guarded(em, err, with(GddFlags::values(p), {x}), "finite_difference",
                        [&] { return Evaluation{ode_residual(p, x).scaled(), std::nullopt, true}; });
            }
            return em.finish();
        }

        if (vg_cmd->parsed()) {
            const VgParams v = vg_p.params();
            const auto base = VgFlags::values(v);
            if (vg_pdf_cmd->parsed() || vg_ode_cmd->parsed()) {
                const bool is_pdf = vg_pdf_cmd->parsed();
                const std::vector<double> xs = (is_pdf ? vg_pdf_x : vg_ode_x).points();
                Emitter em(out, as_json, concat(VgFlags::names(), {"x"}));
                for (const double x : xs) {
                    if (is_pdf) {
                        guarded(em, err, with(base, {x}), "bessel", [&] { return from_special(vg_pdf(v, x)); });
                    } else {
                        guarded(em, err, with(base, {x}), "finite_difference",
                                [&] { return Evaluation{vg_ode_residual(v, x).scaled(), std::nullopt, true}; });
                    }
                }
                return em.finish();
            }
            if (vg_mom_cmd->parsed()) {
                const auto k_max = static_cast<unsigned>(parse_count(vg_mom_k, "--k-max"));
                if (k_max > 50) {
                    throw ArgumentError("--k-max above 50 is not supported");
                }
                const bool all = vg_mom_route == "all";
                const auto rec = vg_moments_recurrence(v, k_max);
                const auto mapped = moments_recurrence(to_gdd(v), k_max);
                Emitter em(out, as_json, concat(VgFlags::names(), {"k"}));
                for (unsigned k = 0; k <= k_max; ++k) {
                    const auto in = with(base, {k});
                    if (all || vg_mom_route == "recurrence") {
                        em.emit(in, rec[k].value, "recurrence", std::nullopt, Status::ok);
                    }
                    if (all || vg_mom_route == "closed") {
                        em.emit(in, vg_moment_closed_form(v, k).value, "closed_form", std::nullopt, Status::ok);
                    }
                    if (all || vg_mom_route == "gdd") {
                        em.emit(in, mapped[k].value, "gdd_recurrence", std::nullopt, Status::ok);
                    }
                }
                return em.finish();
            }
            if (vg_abs_cmd->parsed()) {
                const double k = parse_real(vg_abs_k, "--k");
                Emitter em(out, as_json, concat(VgFlags::names(), {"k"}));
                guarded(em, err, with(base, {k}), "closed_form", [&] { return from_report(vg_abs_moment(v, k)); });
                return em.finish();
            }
            if (vg_st_cmd->parsed()) {
                const TestFunction tf = named_test_function(vg_st_g);
                Emitter em(out, as_json, concat(VgFlags::names(), {"g"}));
                guarded(em, err, with(base, {vg_st_g}), "quadrature", [&] {
                    const SteinResult r = vg_stein_expectation(v, tf, qopts);
                    return Evaluation{r.value, r.abs_error_estimate, r.converged};
                });
                return em.finish();
            }
            if (vg_map_cmd->parsed()) {
                const GddParams p = to_gdd(v);
                Emitter em(out, as_json, concat(VgFlags::names(), {"parameter"}));
                const std::vector<std::pair<const char*, double>> mapped{
                    {"alpha1", p.alpha1()}, {"beta1", p.beta1()}, {"alpha2", p.alpha2()}, {"beta2", p.beta2()}};
                for (const auto& [name, value] : mapped) {
                    em.emit(with(base, {name}), value, "closed_form", std::nullopt, Status::ok);
                }
                return em.finish();
            }
        }

        if (smp_cmd->parsed()) {
            const unsigned long long n = parse_count(smp_n, "--n");
            const unsigned long long seed = parse_count(smp_seed, "--seed");
            SamplerState state(seed);
            std::vector<double> xs;
            std::string route;
            if (smp_law == "gdd") {
                if (!smp_p.given()) {
                    throw ArgumentError("sample --law gdd needs --alpha1 --beta1 --alpha2 --beta2");
                }
                xs = sample_gdd(state, smp_p.params(), n);
                route = "gamma_difference";
            } else {
                if (smp_vg.r.empty() || smp_vg.theta.empty() || smp_vg.sigma.empty()) {
                    throw ArgumentError("sample --law vg needs --r --theta --sigma");
                }
                const bool mixture = smp_vg_route == "mixture";
                xs = sample_vg(state, smp_vg.params(), n,
                               mixture ? VgSamplingRoute::normal_mixture : VgSamplingRoute::gamma_difference);
                route = mixture ? "vg_normal_mixture" : "vg_gamma_difference";
            }
            Emitter em(out, as_json, {"seed", "index"});
            for (std::size_t i = 0; i < xs.size(); ++i) {
                em.emit({seed, i}, xs[i], route, std::nullopt, Status::ok);
            }
            return em.finish();
        }

        if (ver_cmd->parsed()) {
            const GddParams p = ver_p.params();
            VerifyOptions vopts;
            vopts.tol_scale = parse_real(ver_scale, "--tol-scale");
            if (vopts.tol_scale <= 0.0) {
                throw ArgumentError("--tol-scale must be positive");
            }
            vopts.quadrature = qopts;
            Emitter em(out, as_json, concat(GddFlags::names(), {"check", "threshold"}));
            for (const CheckResult& c : verify_gdd(p, vopts)) {
                if (!c.passed) {
                    err << "FAILED " << c.name << ": " << format_real(c.measured) << " > " << format_real(c.threshold)
                        << " (" << c.detail << ")\n";
                }
                em.emit(with(GddFlags::values(p), {c.name, c.threshold}), c.measured, "cross_route", std::nullopt,
                        c.passed ? Status::ok : Status::failed);
            }
            return em.finish();
        }
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kArgumentError;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kDomainError;
    }
    err << app.help();
    return kArgumentError;
}

}  // namespace gdd::cli
