#pragma once

#include <cstddef>
#include <vector>

namespace cfor {

// Regularized Shannon kernel: phi(x) = sinc(pi x / delta) * exp(-x^2 / 2 sigma^2).
// One spec describes one filter: the order-0 low-pass or its order-n derivative
// conjugate, sampled with half-width W at spacing delta.
struct KernelSpec {
    double delta = 1.0;        // grid spacing
    double sigma_ratio = 4.5;  // sigma / delta; >= 1 (narrower is rejected)
    int half_width = 35;       // stencil half-width W
    int order = 0;             // 0 = low-pass, 1/2 = derivative order

    double sigma() const { return sigma_ratio * delta; }
    void validate() const;  // throws std::invalid_argument on violation
};

enum class Centering { on_grid, half_grid };

// Sampled kernel weights. Offsets are m*delta (on_grid) or (m+1/2)*delta
// (half_grid) for m = -W..W; weights carry the kernel's 1/delta^order units,
// so applying them needs no further scaling.
struct FilterTaps {
    int order = 0;
    int half_width = 0;
    Centering centering = Centering::on_grid;
    double delta = 1.0;
    std::vector<double> weights;  // length 2W+1, index m+W

    double offset(int m) const {
        return (centering == Centering::half_grid ? m + 0.5 : double(m)) * delta;
    }
    double weight(int m) const { return weights[static_cast<size_t>(m + half_width)]; }
};

struct FrequencyResponse {
    std::vector<double> omega;      // [0, pi/delta]
    std::vector<double> magnitude;  // |H(omega)|
    bool normalized = false;        // max(magnitude) == 1 when set
};

// phi^(n)(x) in physical units. The removable singularity at x=0 and the
// near-zero cancellation region |x| < 1e-8*delta route to Taylor branches.
double eval_kernel(const KernelSpec& spec, double x);

FilterTaps build_taps(const KernelSpec& spec, Centering centering);

FrequencyResponse frequency_response(const FilterTaps& taps, int n_samples,
                                     bool normalize = false);

}  // namespace cfor
