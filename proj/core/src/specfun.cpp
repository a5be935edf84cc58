#include "gdd/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gdd/quadrature.hpp"

namespace gdd::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 10000;
constexpr double kTailRel = 1e-16;

// The two-M connection formula loses roughly e^z / z^(...) digits; beyond this
// point U is taken from the asymptotic expansion or the integral representation.
constexpr double kConnectionZMax = 15.0;
constexpr double kConnectionRelTarget = 1e-12;

struct Series {
    double sum = 0.0;
    double abs_sum = 0.0;
    double tail = 0.0;
    bool converged = false;

    [[nodiscard]] SpecialValue as_value() const {
        const double rounding = 4.0 * kEps * abs_sum;
        return {sum, rounding + tail, converged};
    }
};

// Sums t_0 = 1, t_{l+1} = t_l * ratio(l) until the geometric tail bound drops
// below kTailRel * |sum|. `hump` is the index past which |ratio| settles.
template <class Ratio>
Series sum_series(Ratio ratio, double hump, double limit_ratio) {
    Series s;
    double term = 1.0;
    s.sum = 1.0;
    s.abs_sum = 1.0;
    for (int l = 0; l < kMaxTerms; ++l) {
        const double r = ratio(l);
        term *= r;
        s.sum += term;
        s.abs_sum += std::abs(term);
        if (term == 0.0) {
            s.tail = 0.0;
            s.converged = true;
            return s;
        }
        if (static_cast<double>(l) > hump) {
            const double rho = std::max(std::abs(r), limit_ratio);
            if (rho < 1.0) {
                const double tail = std::abs(term) * rho / (1.0 - rho);
                if (tail <= kTailRel * std::abs(s.sum)) {
                    s.tail = tail;
                    s.converged = true;
                    return s;
                }
            }
        }
    }
    s.tail = std::abs(term);
    s.converged = false;
    return s;
}

int as_int(double x) { return static_cast<int>(std::lround(x)); }

Series hyp2f1_series(double a, double b, double c, double z) {
    const double hump = std::max({std::abs(a), std::abs(b), std::abs(c)}) + 1.0;
    return sum_series(
        [=](int l) {
            const double dl = l;
            return (a + dl) * (b + dl) / ((c + dl) * (dl + 1.0)) * z;
        },
        hump, std::abs(z));
}

SpecialValue terminating_2f1(int k, double b, double c, double z) {
    // sum_{l=0}^{k} (-k)_l (b)_l / ((c)_l l!) z^l, accumulated in long double:
    // alternating terms cancel heavily when z > 0.
    long double term = 1.0L;
    long double sum = 1.0L;
    long double abs_sum = 1.0L;
    const long double a = -static_cast<long double>(k);
    for (int l = 0; l < k; ++l) {
        const long double dl = l;
        term *= (a + dl) * (b + dl) / ((c + dl) * (dl + 1.0L)) * z;
        sum += term;
        abs_sum += std::abs(term);
    }
    const double eps_ld = static_cast<double>(std::numeric_limits<long double>::epsilon());
    const double err = 2.0 * kEps * std::abs(static_cast<double>(sum)) +
                       4.0 * eps_ld * static_cast<double>(abs_sum) * (1.0 + k);
    return {static_cast<double>(sum), err, true};
}

void check_c_pole(double c, int terms, const char* what) {
    if (is_non_positive_integer(c) && -as_int(c) < terms) {
        throw DomainError(std::string(what) + ": denominator parameter hits a pole before the series terminates");
    }
}

SpecialValue hyp2f1_connection(double a, double b, double c, double z) {
    // 2F1(a,b;c;z) = A1 2F1(a,b;a+b-c+1;1-z) + A2 (1-z)^(c-a-b) 2F1(c-a,c-b;c-a-b+1;1-z)
    const double w = 1.0 - z;
    const double s = c - a - b;
    auto coefficient = [](double num1, double num2, double den1, double den2) {
        if (is_non_positive_integer(den1) || is_non_positive_integer(den2)) {
            return 0.0;
        }
        const SignedLog g1 = log_gamma_signed(num1);
        const SignedLog g2 = log_gamma_signed(num2);
        const SignedLog g3 = log_gamma_signed(den1);
        const SignedLog g4 = log_gamma_signed(den2);
        const int sign = g1.sign * g2.sign * g3.sign * g4.sign;
        return sign * std::exp(g1.log_abs + g2.log_abs - g3.log_abs - g4.log_abs);
    };
    const double a1 = coefficient(c, s, c - a, c - b);
    const double a2 = coefficient(c, -s, a, b) * std::pow(w, s);
    SpecialValue f1{0.0, 0.0, true};
    SpecialValue f2{0.0, 0.0, true};
    if (a1 != 0.0) {
        f1 = gauss_2f1(a, b, a + b - c + 1.0, w);
    }
    if (a2 != 0.0) {
        f2 = gauss_2f1(c - a, c - b, s + 1.0, w);
    }
    const double t1 = a1 * f1.value;
    const double t2 = a2 * f2.value;
    const double err = std::abs(a1) * f1.abs_error_estimate + std::abs(a2) * f2.abs_error_estimate +
                       16.0 * kEps * (std::abs(t1) + std::abs(t2));
    return {t1 + t2, err, f1.converged && f2.converged};
}

Series kummer_series(double a, double b, double z) {
    const double hump = std::max({std::abs(a), std::abs(b), z}) + 1.0;
    return sum_series(
        [=](int l) {
            const double dl = l;
            return (a + dl) / ((b + dl) * (dl + 1.0)) * z;
        },
        hump, 0.0);
}

// U(-n, b, z) = (-1)^n sum_{l=0}^{n} (-1)^l C(n,l) (b+l)_{n-l} z^l
SpecialValue tricomi_polynomial(int n, double b, double z) {
    double sum = 0.0;
    double abs_sum = 0.0;
    double binom = 1.0;
    double zpow = 1.0;
    for (int l = 0; l <= n; ++l) {
        const double sign = ((n + l) % 2 == 0) ? 1.0 : -1.0;
        const double term = sign * binom * pochhammer(b + l, static_cast<unsigned>(n - l)) * zpow;
        sum += term;
        abs_sum += std::abs(term);
        binom = binom * static_cast<double>(n - l) / static_cast<double>(l + 1);
        zpow *= z;
    }
    return {sum, 4.0 * kEps * abs_sum * (1.0 + n), true};
}

// Two-M connection formula for non-integer b.
SpecialValue tricomi_connection(double a, double b, double z) {
    const SignedLog g1 = log_gamma_signed(1.0 - b);
    const SignedLog g2 = log_gamma_signed(b - 1.0);
    const double c1 = g1.sign * std::exp(g1.log_abs) * reciprocal_gamma(a - b + 1.0);
    const double c2 = g2.sign * std::exp(g2.log_abs) * reciprocal_gamma(a) * std::pow(z, 1.0 - b);
    SpecialValue m1{0.0, 0.0, true};
    SpecialValue m2{0.0, 0.0, true};
    if (c1 != 0.0) {
        m1 = kummer_m(a, b, z);
    }
    if (c2 != 0.0) {
        m2 = kummer_m(a - b + 1.0, 2.0 - b, z);
    }
    const double t1 = c1 * m1.value;
    const double t2 = c2 * m2.value;
    const double err = std::abs(c1) * m1.abs_error_estimate + std::abs(c2) * m2.abs_error_estimate +
                       8.0 * kEps * (std::abs(t1) + std::abs(t2));
    return {t1 + t2, err, m1.converged && m2.converged};
}

// Connection formula with the even Richardson limit in b near integers.
SpecialValue tricomi_small_z(double a, double b, double z) {
    const double nearest = std::round(b);
    const double gap = std::abs(b - nearest);
    if (gap >= kIntegerBGap) {
        return tricomi_connection(a, b, z);
    }
    const double e1 = kIntegerBGap + gap;
    const double e2 = 2.0 * e1;
    auto symmetric = [&](double e) {
        const SpecialValue up = tricomi_connection(a, b + e, z);
        const SpecialValue down = tricomi_connection(a, b - e, z);
        return SpecialValue{0.5 * (up.value + down.value),
                            0.5 * (up.abs_error_estimate + down.abs_error_estimate),
                            up.converged && down.converged};
    };
    const SpecialValue s1 = symmetric(e1);
    const SpecialValue s2 = symmetric(e2);
    const double value = (4.0 * s1.value - s2.value) / 3.0;
    const double truncation = std::abs(s1.value - s2.value) * e1 * e1;
    const double rounding = (4.0 * s1.abs_error_estimate + s2.abs_error_estimate) / 3.0;
    return {value, truncation + rounding, s1.converged && s2.converged};
}

// U ~ z^-a sum_n (a)_n (a-b+1)_n / n! (-1/z)^n, truncated at the smallest term.
SpecialValue tricomi_asymptotic(double a, double b, double z) {
    const double c = a - b + 1.0;
    double term = 1.0;
    double sum = 1.0;
    double abs_sum = 1.0;
    double smallest = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        const double next = term * (a + n) * (c + n) / ((n + 1.0) * -z);
        if (next == 0.0) {
            smallest = 0.0;
            break;
        }
        if (std::abs(next) > std::abs(term) && n > std::abs(a) + std::abs(c)) {
            break;
        }
        term = next;
        sum += term;
        abs_sum += std::abs(term);
        smallest = std::abs(term);
        if (smallest <= 0.1 * kEps * std::abs(sum)) {
            break;
        }
    }
    const double scale = std::pow(z, -a);
    const double err = (smallest + 4.0 * kEps * abs_sum) * std::abs(scale);
    const bool ok = smallest <= 8.0 * kEps * std::abs(sum);
    return {scale * sum, err, ok};
}

// U(a,b,z) = z^-a / Gamma(a) int_0^inf e^-s s^(a-1) (1 + s/z)^(b-a-1) ds, a > 0.
SpecialValue tricomi_integral(double a, double b, double z) {
    const double expo = b - a - 1.0;
    quadrature::Options opts;
    opts.rel_tol = 1e-13;
    opts.abs_tol = 1e-290;
    opts.max_subdivisions = 4000;
    quadrature::Task task;
    if (a < 1.0) {
        // s = v^(1/a) removes the s^(a-1) endpoint singularity.
        task = quadrature::Task(
            [=](double v) {
                if (v <= 0.0) {
                    return 1.0 / a;
                }
                const double s = std::pow(v, 1.0 / a);
                return std::exp(-s + expo * std::log1p(s / z)) / a;
            },
            quadrature::SemiInfinite{0.0, 1.0}, opts);
    } else {
        task = quadrature::Task(
            [=](double s) {
                if (s <= 0.0) {
                    return a == 1.0 ? 1.0 : 0.0;
                }
                return std::exp(-s + (a - 1.0) * std::log(s) + expo * std::log1p(s / z));
            },
            quadrature::SemiInfinite{0.0, std::max(1.0, a)}, opts);
    }
    const quadrature::Result r = quadrature::integrate(task);
    const double scale = std::exp(-a * std::log(z) - log_gamma(a));
    return {scale * r.value, scale * r.abs_error_estimate + 4.0 * kEps * std::abs(scale * r.value),
            r.converged};
}

SpecialValue tricomi_large_z(double a, double b, double z) {
    const SpecialValue asym = tricomi_asymptotic(a, b, z);
    if (asym.converged) {
        return asym;
    }
    if (a > 0.0) {
        return tricomi_integral(a, b, z);
    }
    const double ap = a - b + 1.0;
    if (ap > 0.0) {
        const double scale = std::pow(z, 1.0 - b);
        const SpecialValue u = tricomi_integral(ap, 2.0 - b, z);
        return {scale * u.value, std::abs(scale) * u.abs_error_estimate, u.converged};
    }
    // Downward recurrence in a is stable for U:
    // U(a-1) = -(b - 2a - z) U(a) - a (a - b + 1) U(a+1)
    const int shift = static_cast<int>(std::ceil(-a)) + 1;
    double top = a + shift;
    SpecialValue hi = tricomi_integral(top + 1.0, b, z);
    SpecialValue lo = tricomi_integral(top, b, z);
    double rel = std::max(hi.rel_error_estimate(), lo.rel_error_estimate());
    bool converged = hi.converged && lo.converged;
    double u_hi = hi.value;
    double u_lo = lo.value;
    for (int i = 0; i < shift; ++i) {
        const double next = -(b - 2.0 * top - z) * u_lo - top * (top - b + 1.0) * u_hi;
        u_hi = u_lo;
        u_lo = next;
        top -= 1.0;
        rel += 4.0 * kEps;
    }
    return {u_lo, rel * std::abs(u_lo), converged};
}

}  // namespace

double log_gamma(double x) {
    detail::require(std::isfinite(x) && x > 0.0, "log_gamma requires a finite x > 0");
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

SignedLog log_gamma_signed(double x) {
    detail::require_finite(x, "x");
    if (is_non_positive_integer(x)) {
        throw PoleError("Gamma has a pole at x = " + std::to_string(x));
    }
    int sign = 0;
    const double value = ::lgamma_r(x, &sign);
    return {value, sign < 0 ? -1 : 1};
}

double reciprocal_gamma(double x) {
    if (is_non_positive_integer(x)) {
        return 0.0;
    }
    const SignedLog g = log_gamma_signed(x);
    return g.sign * std::exp(-g.log_abs);
}

double pochhammer(double a, unsigned n) {
    double product = 1.0;
    for (unsigned i = 0; i < n; ++i) {
        product *= a + static_cast<double>(i);
    }
    return product;
}

bool is_non_positive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

SpecialValue gauss_2f1(double a, double b, double c, double z) {
    detail::require_finite(a, "a");
    detail::require_finite(b, "b");
    detail::require_finite(c, "c");
    detail::require_finite(z, "z");
    const bool a_term = is_non_positive_integer(a);
    const bool b_term = is_non_positive_integer(b);
    if (a_term || b_term) {
        int k = std::numeric_limits<int>::max();
        double other = 0.0;
        if (a_term) {
            k = -as_int(a);
            other = b;
        }
        if (b_term && -as_int(b) < k) {
            k = -as_int(b);
            other = a;
        }
        check_c_pole(c, k, "gauss_2f1");
        return terminating_2f1(k, other, c, z);
    }
    if (is_non_positive_integer(c)) {
        throw DomainError("gauss_2f1: c is a non-positive integer and the series does not terminate");
    }
    if (z == 0.0) {
        return {1.0, 0.0, true};
    }
    if (std::abs(z) >= 1.0) {
        throw DomainError("gauss_2f1: non-terminating series requires |z| < 1");
    }
    if (z < 0.0) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^-a 2F1(a, c-b; c; z/(z-1))
        const double scale = std::pow(1.0 - z, -a);
        const SpecialValue inner = gauss_2f1(a, c - b, c, z / (z - 1.0));
        return {scale * inner.value, std::abs(scale) * inner.abs_error_estimate + 2.0 * kEps * std::abs(scale * inner.value),
                inner.converged};
    }
    if (z > 0.9) {
        const double s = c - a - b;
        if (std::abs(s - std::round(s)) > 1e-3) {
            return hyp2f1_connection(a, b, c, z);
        }
    }
    return hyp2f1_series(a, b, c, z).as_value();
}

SpecialValue gauss_2f1_coupled_limit(double a, double b, double c, double z) {
    if (!(is_non_positive_integer(b) && is_non_positive_integer(c) && c <= b)) {
        return gauss_2f1(a, b, c, z);
    }
    detail::require(std::abs(z) < 1.0 || is_non_positive_integer(a),
                    "gauss_2f1_coupled_limit requires |z| < 1");
    // (b)_l / (c)_l with the simultaneous zeros b + j0 = 0 and c + j1 = 0 replaced by
    // the ratio of their e-derivatives, which is 1.
    const int zero_num = -as_int(b);
    const int zero_den = -as_int(c);
    double term = 1.0;
    double sum = 1.0;
    double abs_sum = 1.0;
    bool num_zero = false;
    for (int l = 0; l < kMaxTerms; ++l) {
        const double dl = l;
        const double num_b = (l == zero_num) ? 1.0 : (b + dl);
        const double den_c = (l == zero_den) ? 1.0 : (c + dl);
        if (l == zero_num) {
            num_zero = true;
        }
        if (l == zero_den) {
            num_zero = false;
        }
        term *= (a + dl) * num_b / (den_c * (dl + 1.0)) * z;
        if (term == 0.0) {
            break;
        }
        const double contribution = num_zero ? 0.0 : term;
        sum += contribution;
        abs_sum += std::abs(contribution);
        if (l > zero_den + std::abs(a) + 1.0) {
            const double rho = std::abs(z);
            const double tail = std::abs(term) * rho / (1.0 - rho);
            if (tail <= kTailRel * std::abs(sum)) {
                return {sum, 4.0 * kEps * abs_sum + tail, true};
            }
        }
    }
    return {sum, 4.0 * kEps * abs_sum, term == 0.0};
}

SpecialValue kummer_m(double a, double b, double z) {
    detail::require_finite(a, "a");
    detail::require_finite(b, "b");
    detail::require_finite(z, "z");
    if (is_non_positive_integer(a)) {
        const int n = -as_int(a);
        check_c_pole(b, n, "kummer_m");
        double term = 1.0;
        double sum = 1.0;
        double abs_sum = 1.0;
        for (int l = 0; l < n; ++l) {
            const double dl = l;
            term *= (a + dl) / ((b + dl) * (dl + 1.0)) * z;
            sum += term;
            abs_sum += std::abs(term);
        }
        return {sum, 4.0 * kEps * abs_sum * (1.0 + n), true};
    }
    if (is_non_positive_integer(b)) {
        throw DomainError("kummer_m: b is a non-positive integer and the series does not terminate");
    }
    if (z == 0.0) {
        return {1.0, 0.0, true};
    }
    if (z < 0.0) {
        // Kummer transformation M(a,b;z) = e^z M(b-a,b;-z)
        const double scale = std::exp(z);
        const SpecialValue inner = kummer_m(b - a, b, -z);
        return {scale * inner.value, scale * inner.abs_error_estimate + 2.0 * kEps * std::abs(scale * inner.value),
                inner.converged};
    }
    return kummer_series(a, b, z).as_value();
}

SpecialValue tricomi_u(double a, double b, double z) {
    detail::require_finite(a, "a");
    detail::require_finite(b, "b");
    detail::require_finite(z, "z");
    detail::require(z >= 0.0, "tricomi_u requires z >= 0");
    if (is_non_positive_integer(a)) {
        return tricomi_polynomial(-as_int(a), b, z);
    }
    if (z == 0.0) {
        if (b >= 1.0) {
            throw PoleError("tricomi_u: U(a, b; 0) is infinite for b >= 1");
        }
        const double value = std::exp(log_gamma(1.0 - b)) * reciprocal_gamma(a - b + 1.0);
        return {value, 4.0 * kEps * std::abs(value), true};
    }
    if (is_non_positive_integer(a - b + 1.0)) {
        const double scale = std::pow(z, 1.0 - b);
        const SpecialValue poly = tricomi_polynomial(-as_int(a - b + 1.0), 2.0 - b, z);
        return {scale * poly.value, std::abs(scale) * poly.abs_error_estimate, true};
    }
    if (z <= kConnectionZMax) {
        const SpecialValue small = tricomi_small_z(a, b, z);
        if (small.converged && small.abs_error_estimate <= kConnectionRelTarget * std::abs(small.value)) {
            return small;
        }
        const SpecialValue large = tricomi_large_z(a, b, z);
        if (large.converged || !small.converged) {
            return large;
        }
        return small;
    }
    return tricomi_large_z(a, b, z);
}

SpecialValue bessel_k_scaled(double nu, double z) {
    detail::require_finite(nu, "nu");
    detail::require(std::isfinite(z) && z > 0.0, "bessel_k requires z > 0");
    nu = std::abs(nu);
    const double twice = 2.0 * nu;
    if (twice == std::floor(twice) && static_cast<long long>(twice) % 2 == 1) {
        // e^z K_{1/2} = sqrt(pi / 2z), K_{m+1} = K_{m-1} + (2m / z) K_m
        const double k_half = std::sqrt(std::numbers::pi / (2.0 * z));
        double prev = k_half;
        double cur = k_half * (1.0 + 1.0 / z);
        if (nu == 0.5) {
            return {prev, 2.0 * kEps * prev, true};
        }
        for (double m = 1.5; m < nu; m += 1.0) {
            const double next = prev + 2.0 * m / z * cur;
            prev = cur;
            cur = next;
        }
        return {cur, 4.0 * kEps * (nu + 1.0) * cur, true};
    }
    // e^z K_nu(z) = int_0^inf exp(-z (cosh t - 1)) cosh(nu t) dt, truncated 40 e-folds
    // below the peak of the dominant exp(nu t - z (cosh t - 1)) term at sinh t = nu / z.
    auto exponent = [=](double t) {
        const double sh = std::sinh(0.5 * t);
        return nu * t - 2.0 * z * sh * sh;
    };
    const double peak = std::asinh(nu / z);
    const double floor_level = exponent(peak) - 40.0;
    double upper = peak + 1.0;
    while (exponent(upper) > floor_level) {
        upper = peak + 1.5 * (upper - peak);
    }
    quadrature::Options opts;
    opts.rel_tol = 1e-13;
    opts.abs_tol = 1e-300;
    const quadrature::Task task(
        [=](double t) {
            const double sh = std::sinh(0.5 * t);
            const double c = 2.0 * z * sh * sh;
            return 0.5 * (std::exp(nu * t - c) + std::exp(-nu * t - c));
        },
        quadrature::Finite{0.0, upper}, opts);
    const quadrature::Result r = quadrature::integrate(task);
    return {r.value, r.abs_error_estimate + 4.0 * kEps * std::abs(r.value), r.converged};
}

SpecialValue bessel_k(double nu, double z) {
    const SpecialValue scaled = bessel_k_scaled(nu, z);
    const double factor = std::exp(-z);
    return {scaled.value * factor, scaled.abs_error_estimate * factor, scaled.converged};
}

}  // namespace gdd::specfun
