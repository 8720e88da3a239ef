#include "cfor/exact.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace cfor {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Error-free addition; lo collects what the running sum drops.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;
    void add(double x) {
        const double s = hi + x;
        const double bb = s - hi;
        const double err = (hi - (s - bb)) + (x - bb);
        hi = s;
        lo += err;
    }
    double value() const { return hi + lo; }
};

struct CoefficientSet {
    double z = 0.0;
    std::vector<double> a;
};

std::shared_ptr<const CoefficientSet> coefficient_cache(double reynolds, int series_terms) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, std::shared_ptr<const CoefficientSet>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(reynolds, series_terms);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    if (reynolds > 500.0)
        std::cerr << "cole_exact: Re=" << reynolds
                  << " is outside the validated range of the series solution"
                     " (reliable roughly for Re <= 100, warned above 500)\n";

    auto set = std::make_shared<CoefficientSet>();
    set->z = reynolds / (2.0 * kPi);
    int nmax = series_terms;
    if (nmax <= 0) {
        // Past the modified-Bessel peak near n ~ z the coefficients collapse
        // superexponentially.  Stopping at 1e-32 of the leading term puts the
        // tail below the double-double floor, so truncation never competes
        // with coefficient roundoff at any conditioning the series accepts.
        const double amax = std::exp(-set->z) * std::cyl_bessel_i(0.0, set->z);
        nmax = static_cast<int>(set->z) + 10;
        while (nmax < 2000) {
            const double an =
                2.0 * std::exp(-set->z) * std::cyl_bessel_i(static_cast<double>(nmax), set->z);
            if (an * (nmax + 1.0) * (nmax + 1.0) < 1e-32 * amax) break;
            ++nmax;
        }
    }
    set->a = detail::coefficients_bessel(reynolds, nmax);
    cache[key] = set;
    return set;
}

}  // namespace

void ExactSolutionSpec::validate() const {
    if (!std::isfinite(reynolds) || !(reynolds > 0.0))
        throw std::invalid_argument("ExactSolutionSpec: reynolds must be finite and positive");
    if (series_terms < 0)
        throw std::invalid_argument("ExactSolutionSpec: series_terms must be non-negative");
    if (quadrature_points < 16)
        throw std::invalid_argument("ExactSolutionSpec: quadrature_points must be >= 16");
}

namespace detail {

std::vector<double> coefficients_bessel(double reynolds, int nmax) {
    const double z = reynolds / (2.0 * kPi);
    const double scale = std::exp(-z);
    std::vector<double> a(nmax + 1);
    for (int n = 0; n <= nmax; ++n)
        a[n] = (n > 0 ? 2.0 : 1.0) * scale * std::cyl_bessel_i(static_cast<double>(n), z);
    return a;
}

std::vector<double> coefficients_quadrature(double reynolds, int nmax) {
    // Trapezoid doubling; the integrand is smooth and even about both
    // endpoints, so doubling converges exponentially.
    const double z = reynolds / (2.0 * kPi);
    std::vector<double> a(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        double prev = 0.0;
        bool have_prev = false;
        double val = 0.0;
        for (int m = 64; m <= (1 << 20); m *= 2) {
            DoubleDouble acc;
            for (int j = 0; j <= m; ++j) {
                const double y = static_cast<double>(j) / m;
                double f = std::exp(-z * (1.0 - std::cos(kPi * y))) * std::cos(n * kPi * y);
                if (j == 0 || j == m) f *= 0.5;
                acc.add(f);
            }
            val = acc.value() / m;
            if (have_prev && std::abs(val - prev) <= 1e-16 * std::max(1.0, std::abs(val))) break;
            prev = val;
            have_prev = true;
        }
        a[n] = (n > 0 ? 2.0 : 1.0) * val;
    }
    return a;
}

double cole_integral(double reynolds, double x, double t, int initial_points) {
    const double nu = 1.0 / reynolds;
    const double z = reynolds / (2.0 * kPi);
    // Window where exp(-(x-y)^2/(4 nu t) + z cos(pi y)) is above e^{-80} of
    // its peak; beyond it the tail cannot reach 1e-13 of the quotient.
    const double half_width = std::sqrt(4.0 * nu * t * (2.0 * z + 80.0));
    double prev = 0.0;
    bool have_prev = false;
    for (int m = initial_points; m <= (1 << 18); m *= 2) {
        double gmax = -std::numeric_limits<double>::infinity();
        std::vector<double> g(m + 1);
        for (int j = 0; j <= m; ++j) {
            const double y = x - half_width + 2.0 * half_width * j / m;
            g[j] = -(x - y) * (x - y) / (4.0 * nu * t) + z * std::cos(kPi * y);
            gmax = std::max(gmax, g[j]);
        }
        DoubleDouble num, den;
        for (int j = 0; j <= m; ++j) {
            const double y = x - half_width + 2.0 * half_width * j / m;
            double w = std::exp(g[j] - gmax);
            if (j == 0 || j == m) w *= 0.5;
            num.add((x - y) / t * w);
            den.add(w);
        }
        const double val = num.value() / den.value();
        if (have_prev && std::abs(val - prev) <= 1e-13 * std::max(1.0, std::abs(val)))
            return val;
        prev = val;
        have_prev = true;
    }
    return prev;
}

}  // namespace detail

double cole_exact(double x, double t, const ExactSolutionSpec& spec) {
    spec.validate();
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("cole_exact: x must lie in [0, 1]");
    if (t < 0.0 || !std::isfinite(t))
        throw std::invalid_argument("cole_exact: t must be finite and non-negative");
    if (x == 0.0 || x == 1.0) return 0.0;
    // At t = 0 the quotient telescopes back to the initial profile exactly,
    // while evaluating it numerically is hopeless near x = 1: the
    // denominator shrinks to ~1e-14 of its term sum, so rounded-double
    // coefficients alone put ~1e-3 of noise into the quotient there.
    if (t == 0.0) return std::sin(kPi * x);

    const auto coeffs = coefficient_cache(spec.reynolds, spec.series_terms);
    const std::vector<double>& a = coeffs->a;
    const double nu = 1.0 / spec.reynolds;
    const int nmax = static_cast<int>(a.size()) - 1;

    DoubleDouble num, den;
    den.add(a[0]);
    double abs_num = 0.0, abs_den = std::abs(a[0]);
    for (int n = 1; n <= nmax; ++n) {
        const double decay = std::exp(-static_cast<double>(n) * n * kPi * kPi * nu * t);
        const double cn = a[n] * decay;
        if (std::abs(cn) < 1e-300) break;
        const double tn = cn * n * std::sin(n * kPi * x);
        const double td = cn * std::cos(n * kPi * x);
        num.add(tn);
        den.add(td);
        abs_num += std::abs(tn);
        abs_den += std::abs(td);
    }
    const double den_v = den.value();
    const double num_v = num.value();

    // Double-double summation is exact, but the coefficients enter as rounded
    // doubles, so the quotient carries roughly 1e-16 * worst_ratio of relative
    // error no matter how the sum is accumulated.  Past 1e6 that cannot
    // promise 1e-9, and the heat-kernel quadrature stays accurate there, so
    // hand over.
    const double worst_ratio =
        std::max(abs_den / std::max(std::abs(den_v), 1e-300),
                 abs_num / std::max(std::abs(num_v), 1e-300));
    if (den_v <= 0.0 || worst_ratio > 1e6)
        return detail::cole_integral(spec.reynolds, x, t, spec.quadrature_points);
    return 2.0 * kPi * nu * num_v / den_v;
}

ErrorReport error_norms(const Field& numeric, double t, const ExactSolutionSpec& spec) {
    numeric.grid.validate();
    if (static_cast<int>(numeric.values.size()) != numeric.grid.n_points)
        throw std::invalid_argument("error_norms: values length does not match grid");
    if (t < 0.0) throw std::invalid_argument("error_norms: t must be non-negative");
    ErrorReport report;
    report.t = t;
    double sum = 0.0;
    for (int i = 0; i < numeric.grid.n_points; ++i) {
        const double dev = std::abs(numeric.values[i] - cole_exact(numeric.grid.node(i), t, spec));
        report.l_inf = std::max(report.l_inf, dev);
        sum += dev;
    }
    report.l_1 = sum / numeric.grid.n_points;
    return report;
}

}  // namespace cfor
