#include "cfor/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace cfor {

bool Field::finite() const {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return std::isfinite(v); });
}

namespace {

void check_field(const Field& field, const char* who) {
    field.grid.validate();
    if (static_cast<int>(field.values.size()) != field.grid.n_points)
        throw std::invalid_argument(std::string(who) + ": values length does not match grid");
    if (!field.finite())
        throw std::invalid_argument(std::string(who) + ": non-finite input");
}

// Antisymmetric node extension about 0 and n-1, period 2n-2.  Valid only for
// fields with zero boundary values; callers pin them.
inline void odd_node_map(long long pos, int n, double& sign, int& idx) {
    const long long period = 2LL * n - 2;
    long long p = pos % period;
    if (p < 0) p += period;
    if (p >= n) {
        sign = -1.0;
        idx = static_cast<int>(period - p);
    } else {
        sign = 1.0;
        idx = static_cast<int>(p);
    }
}

// Antisymmetric midpoint extension about -1/2 and m-1/2, period 2m:
// ext[-1-j] = -mid[j], ext[m+j] = -mid[m-1-j].
inline void odd_mid_map(long long pos, int m, double& sign, int& idx) {
    const long long period = 2LL * m;
    long long p = pos % period;
    if (p < 0) p += period;
    if (p >= m) {
        sign = -1.0;
        idx = static_cast<int>(2LL * m - 1 - p);
    } else {
        sign = 1.0;
        idx = static_cast<int>(p);
    }
}

}  // namespace

std::vector<double> extend_odd(const Field& field, int pad) {
    check_field(field, "extend_odd");
    const int n = field.grid.n_points;
    if (pad < 0) throw std::invalid_argument("extend_odd: pad must be non-negative");
    if (pad >= n)
        throw std::invalid_argument("extend_odd: pad must be smaller than the field length");
    const std::vector<double>& u = field.values;
    std::vector<double> ext(static_cast<size_t>(n) + 2 * pad);
    for (int j = 0; j < pad; ++j) ext[j] = 2.0 * u[0] - u[pad - j];
    for (int i = 0; i < n; ++i) ext[pad + i] = u[i];
    for (int j = 0; j < pad; ++j) ext[pad + n + j] = 2.0 * u[n - 1] - u[n - 2 - j];
    return ext;
}

Field apply_taps(const Field& field, const FilterTaps& taps) {
    check_field(field, "apply_taps");
    if (taps.centering != Centering::on_grid)
        throw std::invalid_argument("apply_taps: half-grid taps produce midpoint values, not node values");
    if (static_cast<int>(taps.weights.size()) != 2 * taps.half_width + 1)
        throw std::invalid_argument("apply_taps: weights length does not match half_width");
    const int n = field.grid.n_points;
    const int w = taps.half_width;
    const std::vector<double> ext = extend_odd(field, w);
    Field out{field.grid, std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int m = -w; m <= w; ++m) acc += taps.weight(m) * ext[i + w - m];
        out.values[i] = acc;
    }
    return out;
}

Field conjugate_lowpass(const Field& field, const KernelSpec& lowpass_spec) {
    check_field(field, "conjugate_lowpass");
    if (lowpass_spec.order != 0)
        throw std::invalid_argument("conjugate_lowpass: smoothing taps must be order 0");
    const int n = field.grid.n_points;
    const int mids = n - 1;
    KernelSpec spec = lowpass_spec;
    spec.delta = field.grid.spacing();
    spec.validate();
    const int w = spec.half_width;
    if (w + 1 > mids)
        throw std::invalid_argument("conjugate_lowpass: half_width too large for this grid");
    const FilterTaps taps = build_taps(spec, Centering::half_grid);
    const std::vector<double>& u = field.values;

    // Nodes -> midpoints: value at x_{j+1/2} from node samples, taps at
    // offsets (m+1/2)*delta, so mid[j] = sum_m w(m) ext_node(j - m).
    std::vector<double> mid(mids);
    for (int j = 0; j < mids; ++j) {
        double acc = 0.0;
        for (int m = -w; m <= w; ++m) {
            double sign;
            int idx;
            odd_node_map(static_cast<long long>(j) - m, n, sign, idx);
            acc += taps.weight(m) * sign * u[idx];
        }
        mid[j] = acc;
    }
    // Midpoints -> nodes: node x_i sits (m+1/2)*delta above mid index
    // i-m-1, so the return gather mirrors the first pass. The taps are
    // even about -1/2, so this equals sum_m w(m) ext_mid(i+m).
    Field out{field.grid, std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int m = -w; m <= w; ++m) {
            double sign;
            int idx;
            odd_mid_map(static_cast<long long>(i) - m - 1, mids, sign, idx);
            acc += taps.weight(m) * sign * mid[idx];
        }
        out.values[i] = acc;
    }
    out.values[0] = 0.0;
    out.values[n - 1] = 0.0;
    return out;
}

double total_variation(const Field& field) {
    check_field(field, "total_variation");
    double tv = 0.0;
    for (size_t i = 1; i < field.values.size(); ++i)
        tv += std::abs(field.values[i] - field.values[i - 1]);
    return tv;
}

FourierImage fourier_image(const Field& field) {
    check_field(field, "fourier_image");
    const int n = field.grid.n_points;
    const int m = 2 * (n - 1);
    std::vector<double> v(m, 0.0);
    for (int i = 0; i < n; ++i) v[i] = field.values[i];
    for (int k = n; k < m; ++k) v[k] = -field.values[m - k];
    const int bins = m / 2 + 1;
    FourierImage img;
    img.omega.resize(bins);
    img.magnitude.resize(bins);
    const double pi = 3.14159265358979323846264338327950288;
    double peak = 0.0;
    for (int b = 0; b < bins; ++b) {
        std::complex<double> acc(0.0, 0.0);
        for (int k = 0; k < m; ++k) {
            const double phase = -2.0 * pi * b * k / m;
            acc += v[k] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        img.omega[b] = static_cast<double>(b) / (n - 1);
        img.magnitude[b] = std::abs(acc);
        peak = std::max(peak, img.magnitude[b]);
    }
    if (peak > 0.0)
        for (double& mag : img.magnitude) mag /= peak;
    return img;
}

}  // namespace cfor
