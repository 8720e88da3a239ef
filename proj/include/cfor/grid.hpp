#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cfor/kernel.hpp"

namespace cfor {

struct Grid {
    int n_points = 0;
    double x_min = 0.0;
    double x_max = 1.0;

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double node(int k) const {
        return k == n_points - 1 ? x_max : x_min + spacing() * k;
    }
    void validate() const {
        if (n_points < 3) throw std::invalid_argument("Grid: n_points must be >= 3");
        if (!(x_max > x_min)) throw std::invalid_argument("Grid: x_max must exceed x_min");
    }
};

struct Field {
    Grid grid;
    std::vector<double> values;

    bool finite() const;
};

// Thrown when a field goes non-finite or exceeds the divergence bound.
struct BlowUpError : std::runtime_error {
    double t;
    int node;
    BlowUpError(double t_, int node_, const std::string& what_)
        : std::runtime_error(what_), t(t_), node(node_) {}
};

// Odd reflection about both boundary nodes: u(x_min - s) = 2 u(x_min) - u(x_min + s)
// and likewise at x_max.  pad >= n_points would reflect past the available data.
std::vector<double> extend_odd(const Field& field, int pad);

// result(i) = sum_m weight(m) * extended(i - m): convolution of the odd-extended
// field with on-grid taps, i.e. the order-n DSC derivative at every node.
Field apply_taps(const Field& field, const FilterTaps& taps);

// Conjugated low-pass smoothing: half-grid interpolation nodes -> midpoints ->
// nodes over the odd-extended signal, then boundary values re-pinned to 0.
// The round trip applies the filter's magnitude response squared.
Field conjugate_lowpass(const Field& field, const KernelSpec& lowpass_spec);

double total_variation(const Field& field);

// Discrete Fourier magnitude of the field's odd extension over a doubled
// domain; omega in units of pi/spacing, magnitude normalized to unit maximum.
struct FourierImage {
    std::vector<double> omega;
    std::vector<double> magnitude;
};
FourierImage fourier_image(const Field& field);

}  // namespace cfor
