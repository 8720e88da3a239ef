#include "cfor/kernel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace cfor {

void KernelSpec::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("KernelSpec: delta must be positive");
    if (!(sigma_ratio >= 1.0))
        throw std::invalid_argument("KernelSpec: sigma/delta must be >= 1");
    if (half_width < 1) throw std::invalid_argument("KernelSpec: half_width must be >= 1");
    if (order < 0 || order > 2)
        throw std::invalid_argument("KernelSpec: order must be 0, 1, or 2");
}

namespace {

// Kernel in the reduced variable r = x/delta, q = sigma/delta.  Returns
// phi^(n) with the 1/delta^n factor left to the caller.  sin/cos of pi*r are
// reduced through the nearest integer so the sinc factor vanishes exactly at
// nonzero integer r.
double eval_reduced(int n, double r, double q) {
    const double pi = 3.14159265358979323846264338327950288;
    double s0, s1 = 0.0, s2 = 0.0;
    if (std::fabs(r) < 1e-8) {
        s0 = 1.0 - (pi * r) * (pi * r) / 6.0;
        s1 = -pi * pi * r / 3.0 + pi * pi * pi * pi * r * r * r / 30.0;
        s2 = -pi * pi / 3.0 + pi * pi * pi * pi * r * r / 10.0;
    } else {
        const double m = std::nearbyint(r);
        const double f = r - m;
        const double sgn = (std::fmod(m, 2.0) == 0.0) ? 1.0 : -1.0;
        const double sp = sgn * std::sin(pi * f);  // sin(pi r), exact 0 at integers
        const double cp = sgn * std::cos(pi * f);  // cos(pi r)
        s0 = sp / (pi * r);
        if (n >= 1) s1 = (pi * r * cp - sp) / (pi * r * r);
        if (n >= 2) s2 = -pi * sp / r - 2.0 * cp / (r * r) + 2.0 * sp / (pi * r * r * r);
    }
    const double g0 = std::exp(-r * r / (2.0 * q * q));
    if (n == 0) return s0 * g0;
    const double g1 = (-r / (q * q)) * g0;
    if (n == 1) return s1 * g0 + s0 * g1;
    const double g2 = (r * r / (q * q * q * q) - 1.0 / (q * q)) * g0;
    return s2 * g0 + 2.0 * s1 * g1 + s0 * g2;
}

}  // namespace

double eval_kernel(const KernelSpec& spec, double x) {
    spec.validate();
    const double r = x / spec.delta;
    double scale = 1.0;
    for (int k = 0; k < spec.order; ++k) scale /= spec.delta;
    return eval_reduced(spec.order, r, spec.sigma_ratio) * scale;
}

FilterTaps build_taps(const KernelSpec& spec, Centering centering) {
    spec.validate();
    const int W = spec.half_width;
    FilterTaps taps;
    taps.order = spec.order;
    taps.half_width = W;
    taps.centering = centering;
    taps.delta = spec.delta;
    taps.weights.resize(static_cast<size_t>(2 * W + 1));
    double scale = 1.0;
    for (int k = 0; k < spec.order; ++k) scale /= spec.delta;
    for (int m = -W; m <= W; ++m) {
        const double r = (centering == Centering::half_grid) ? m + 0.5 : double(m);
        taps.weights[static_cast<size_t>(m + W)] =
            eval_reduced(spec.order, r, spec.sigma_ratio) * scale;
    }
    return taps;
}

FrequencyResponse frequency_response(const FilterTaps& taps, int n_samples,
                                     bool normalize) {
    if (n_samples < 2) throw std::invalid_argument("frequency_response: n_samples < 2");
    const double pi = 3.14159265358979323846264338327950288;
    const int W = taps.half_width;
    FrequencyResponse fr;
    fr.omega.resize(static_cast<size_t>(n_samples));
    fr.magnitude.resize(static_cast<size_t>(n_samples));
    const double omega_max = pi / taps.delta;
    for (int i = 0; i < n_samples; ++i) {
        const double om = omega_max * i / (n_samples - 1);
        std::complex<double> h{0.0, 0.0};
        for (int m = -W; m <= W; ++m) {
            const double phase = -om * taps.offset(m);
            h += taps.weight(m) * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        fr.omega[static_cast<size_t>(i)] = om;
        fr.magnitude[static_cast<size_t>(i)] = std::abs(h);
    }
    if (normalize) {
        double peak = 0.0;
        for (double v : fr.magnitude) peak = std::max(peak, v);
        if (peak > 0.0)
            for (double& v : fr.magnitude) v /= peak;
        fr.normalized = true;
    }
    return fr;
}

}  // namespace cfor
