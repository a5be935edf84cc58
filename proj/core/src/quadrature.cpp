#include "gdd/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "gdd/errors.hpp"

namespace gdd::quadrature {

namespace {

// Kronrod abscissae on [-1, 1] (positive half); odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

// Integrand pulled back to the u variable of the interval map.
class Mapped {
public:
    Mapped(const Integrand& f, const Interval& interval) : f_(f), interval_(interval) {}

    [[nodiscard]] std::pair<double, double> domain() const {
        return std::visit(
            [](const auto& iv) -> std::pair<double, double> {
                using T = std::decay_t<decltype(iv)>;
                if constexpr (std::is_same_v<T, Finite>) {
                    return {iv.lo, iv.hi};
                } else if constexpr (std::is_same_v<T, FullLine>) {
                    return {-1.0, 1.0};
                } else {
                    return {0.0, 1.0};
                }
            },
            interval_);
    }

    double operator()(double u) const {
        double t = 0.0;
        double jac = 1.0;
        std::visit(
            [&](const auto& iv) {
                using T = std::decay_t<decltype(iv)>;
                if constexpr (std::is_same_v<T, Finite>) {
                    t = u;
                } else if constexpr (std::is_same_v<T, SemiInfinite>) {
                    const double w = 1.0 - u;
                    t = iv.lo + iv.scale * u / w;
                    jac = iv.scale / (w * w);
                } else if constexpr (std::is_same_v<T, SemiInfiniteBelow>) {
                    const double w = 1.0 - u;
                    t = iv.hi - iv.scale * u / w;
                    jac = iv.scale / (w * w);
                } else {
                    const double w = 1.0 - u * u;
                    t = iv.scale * u / w;
                    jac = iv.scale * (1.0 + u * u) / (w * w);
                }
            },
            interval_);
        const double fx = f_(t);
        if (!std::isfinite(fx)) {
            throw NonFiniteIntegrand(t, fx);
        }
        if (fx == 0.0) {
            return 0.0;
        }
        return fx * jac;
    }

private:
    const Integrand& f_;
    const Interval& interval_;
};

template <class F>
Segment gauss_kronrod(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        const double pair = f1[j] + f2[j];
        resk += kWgk[j] * pair;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            resg += kWg[j / 2] * pair;
        }
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
    }
    const double scale = std::abs(half);
    resk *= half;
    resg *= half;
    resabs *= scale;
    resasc *= scale;
    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    return {a, b, resk, err};
}

double tolerance_for(const Task& task, double value) {
    return std::max(task.abs_tol, task.rel_tol * std::abs(value));
}

template <class F>
Result adaptive(const F& f, double a, double b, const Task& task) {
    auto cmp = [](const Segment& x, const Segment& y) { return x.error < y.error; };
    std::vector<Segment> heap;
    std::vector<Segment> frozen;

    std::vector<double> cuts = {a};
    if (task.singular_lo) {
        cuts.push_back(a + 0.5 * (b - a));
    }
    if (task.singular_hi) {
        const double m = a + 0.5 * (b - a);
        if (!task.singular_lo) {
            cuts.push_back(m);
        }
        cuts.push_back(m + 0.5 * (b - m));
    }
    cuts.push_back(b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        heap.push_back(gauss_kronrod(f, cuts[i], cuts[i + 1]));
    }
    std::make_heap(heap.begin(), heap.end(), cmp);

    auto totals = [&]() {
        double v = 0.0;
        double e = 0.0;
        for (const auto& s : heap) {
            v += s.value;
            e += s.error;
        }
        for (const auto& s : frozen) {
            v += s.value;
            e += s.error;
        }
        return std::pair{v, e};
    };

    int subdivisions = 0;
    auto [value, error] = totals();
    while (error > tolerance_for(task, value) && subdivisions < task.max_subdivisions &&
           !heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        const double width = std::abs(worst.b - worst.a);
        if (width <= 8.0 * kEps * std::max(std::abs(mid), std::numeric_limits<double>::min()) ||
            mid == worst.a || mid == worst.b) {
            frozen.push_back(worst);
        } else {
            heap.push_back(gauss_kronrod(f, worst.a, mid));
            std::push_heap(heap.begin(), heap.end(), cmp);
            heap.push_back(gauss_kronrod(f, mid, worst.b));
            std::push_heap(heap.begin(), heap.end(), cmp);
            ++subdivisions;
        }
        std::tie(value, error) = totals();
    }
    return {value, error, subdivisions, error <= tolerance_for(task, value)};
}

}  // namespace

NonFiniteIntegrand::NonFiniteIntegrand(double abscissa, double value)
    : std::runtime_error([&] {
          std::ostringstream os;
          os.precision(17);
          os << "integrand is non-finite (" << value << ") at abscissa " << abscissa;
          return os.str();
      }()),
      abscissa_(abscissa) {}

void validate(const Task& task) {
    detail::require(static_cast<bool>(task.integrand), "quadrature task has no integrand");
    detail::require(std::isfinite(task.rel_tol) && task.rel_tol > 0.0,
                    "rel_tol must be positive and finite");
    detail::require(std::isfinite(task.abs_tol) && task.abs_tol > 0.0,
                    "abs_tol must be positive and finite");
    detail::require(task.max_subdivisions >= 1, "max_subdivisions must be >= 1");
    std::visit(
        [](const auto& iv) {
            using T = std::decay_t<decltype(iv)>;
            if constexpr (std::is_same_v<T, Finite>) {
                detail::require(std::isfinite(iv.lo) && std::isfinite(iv.hi),
                                "finite interval needs finite endpoints");
            } else if constexpr (std::is_same_v<T, SemiInfinite>) {
                detail::require(std::isfinite(iv.lo), "semi-infinite interval needs finite lo");
                detail::require(iv.scale > 0.0 && std::isfinite(iv.scale), "scale must be > 0");
            } else if constexpr (std::is_same_v<T, SemiInfiniteBelow>) {
                detail::require(std::isfinite(iv.hi), "semi-infinite interval needs finite hi");
                detail::require(iv.scale > 0.0 && std::isfinite(iv.scale), "scale must be > 0");
            } else {
                detail::require(iv.scale > 0.0 && std::isfinite(iv.scale), "scale must be > 0");
            }
        },
        task.interval);
}

Result integrate(const Task& task) {
    validate(task);
    if (const auto* fin = std::get_if<Finite>(&task.interval)) {
        if (fin->lo == fin->hi) {
            return {0.0, 0.0, 0, true};
        }
        if (fin->lo > fin->hi) {
            Task reversed = task;
            reversed.interval = Finite{fin->hi, fin->lo};
            std::swap(reversed.singular_lo, reversed.singular_hi);
            Result r = integrate(reversed);
            r.value = -r.value;
            return r;
        }
    }
    const Mapped mapped(task.integrand, task.interval);
    const auto [a, b] = mapped.domain();
    return adaptive(mapped, a, b, task);
}

namespace {

// Sum of sum_{j>=0} (-1)^j u_j by the Euler transform; returns (value, size of last term).
std::pair<double, double> euler_tail(const std::vector<double>& u) {
    std::vector<double> diff = u;
    double sum = 0.0;
    double last = 0.0;
    double weight = 0.5;
    double sign = 1.0;
    for (std::size_t n = 0; n < u.size(); ++n) {
        last = sign * diff[0] * weight;
        sum += last;
        for (std::size_t j = 0; j + 1 < diff.size() - n; ++j) {
            diff[j] = diff[j + 1] - diff[j];
        }
        weight *= 0.5;
        sign = -sign;
    }
    return {sum, std::abs(last)};
}

Result lobe_series(const Integrand& f, double lo, double omega, const Task& task) {
    const double width = std::numbers::pi / std::abs(omega);
    constexpr int kTailTerms = 24;
    constexpr int kMaxLobes = 4000;
    std::vector<double> lobes;
    double lobe_error = 0.0;
    int subdivisions = 0;

    Task lobe_task = task;
    lobe_task.abs_tol = task.abs_tol * 0.01;
    lobe_task.singular_lo = false;
    lobe_task.singular_hi = false;

    auto add_lobes = [&](int count) {
        for (int i = 0; i < count; ++i) {
            const double k = static_cast<double>(lobes.size());
            lobe_task.interval = Finite{lo + k * width, lo + (k + 1.0) * width};
            lobe_task.integrand = f;
            const Result r = integrate(lobe_task);
            lobes.push_back(r.value);
            lobe_error += r.abs_error_estimate;
            subdivisions += r.subdivisions_used;
        }
    };

    auto estimate = [&](std::size_t head) {
        double direct = 0.0;
        for (std::size_t k = 0; k < head; ++k) {
            direct += lobes[k];
        }
        std::vector<double> u;
        for (std::size_t k = head; k < lobes.size(); ++k) {
            const double s = ((k - head) % 2 == 0) ? 1.0 : -1.0;
            u.push_back(s * lobes[k]);
        }
        const auto [tail, last] = euler_tail(u);
        return std::pair{direct + tail, last};
    };

    add_lobes(16 + kTailTerms);
    double previous = estimate(16).first;
    std::size_t head = 16;
    while (true) {
        head += 8;
        add_lobes(8);
        const auto [current, last] = estimate(head);
        const double change = std::abs(current - previous);
        const double err = change + last + lobe_error;
        if (change + last <= tolerance_for(task, current) ||
            static_cast<int>(lobes.size()) >= kMaxLobes) {
            return {current, err, subdivisions, err <= tolerance_for(task, current)};
        }
        previous = current;
    }
}

}  // namespace

Result integrate_oscillatory(const Task& task, double omega) {
    validate(task);
    detail::require_finite(omega, "omega");
    if (omega == 0.0) {
        return integrate(task);
    }
    return std::visit(
        [&](const auto& iv) -> Result {
            using T = std::decay_t<decltype(iv)>;
            if constexpr (std::is_same_v<T, Finite>) {
                return integrate(task);
            } else if constexpr (std::is_same_v<T, SemiInfinite>) {
                return lobe_series(task.integrand, iv.lo, omega, task);
            } else if constexpr (std::is_same_v<T, SemiInfiniteBelow>) {
                const Integrand& f = task.integrand;
                const double hi = iv.hi;
                Integrand reflected = [&f, hi](double s) { return f(2.0 * hi - s); };
                return lobe_series(reflected, hi, omega, task);
            } else {
                const Integrand& f = task.integrand;
                Integrand reflected = [&f](double s) { return f(-s); };
                Task half = task;
                half.abs_tol = 0.5 * task.abs_tol;
                const Result right = lobe_series(f, 0.0, omega, half);
                const Result left = lobe_series(reflected, 0.0, omega, half);
                const double value = right.value + left.value;
                const double err = right.abs_error_estimate + left.abs_error_estimate;
                return {value, err, right.subdivisions_used + left.subdivisions_used,
                        right.converged && left.converged};
            }
        },
        task.interval);
}

}  // namespace gdd::quadrature
