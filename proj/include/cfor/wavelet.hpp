#pragma once

#include <vector>

#include "cfor/grid.hpp"

namespace cfor {

// CDF 9/7 biorthogonal bank, zero-phase centered: analysis taps are indexed
// n = -4..4 (lowpass) and -3..3 (highpass); synthesis taps are the alternating
// modulations of the opposite analysis filter.
struct WaveletFilterBank {
    std::vector<double> analysis_lowpass;   // 9 entries, index n+4
    std::vector<double> analysis_highpass;  // 7 entries, index n+3

    static WaveletFilterBank cdf97();

    double alp(int n) const {
        return (n < -4 || n > 4) ? 0.0 : analysis_lowpass[n + 4];
    }
    double ahp(int n) const {
        return (n < -3 || n > 3) ? 0.0 : analysis_highpass[n + 3];
    }
    double syn_lp(int n) const { return (n % 2 == 0 ? 1.0 : -1.0) * ahp(n); }
    double syn_hp(int n) const { return (n % 2 == 0 ? 1.0 : -1.0) * alp(n); }

    void validate() const;
};

// Decimated Mallat cascade output.  input_lengths[s] is the length entering
// scale s; it is the bookkeeping needed to undo the decimation of odd lengths.
struct MultiscaleDecomposition {
    Grid grid;
    int scales = 0;
    std::vector<std::vector<double>> details;
    std::vector<double> approximation;
    std::vector<int> input_lengths;
};

struct HighPassMeasure {
    std::vector<double> per_scale;
    double total = 0.0;
};

// Whole-point symmetric extension at both ends, decimation by 2 per scale.
// Every scale input must be at least 4 samples long.
MultiscaleDecomposition dwt_forward(const Field& field, const WaveletFilterBank& bank,
                                    int scales);
Field dwt_inverse(const MultiscaleDecomposition& decomp, const WaveletFilterBank& bank);

// per_scale[s] = sum_k |detail_s(k)|; total = sum of per_scale.
HighPassMeasure highpass_measure(const Field& field, const WaveletFilterBank& bank,
                                 int scales);

}  // namespace cfor
