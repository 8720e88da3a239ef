#include "cfor/wavelet.hpp"

#include <cmath>
#include <string>

namespace cfor {

WaveletFilterBank WaveletFilterBank::cdf97() {
    WaveletFilterBank bank;
    bank.analysis_lowpass = {0.026748757410810,  -0.016864118442875, -0.078223266528988,
                             0.266864118442875,  0.602949018236360,  0.266864118442875,
                             -0.078223266528988, -0.016864118442875, 0.026748757410810};
    bank.analysis_highpass = {0.091271763114250,  -0.057543526228500, -0.591271763114250,
                              1.115087052457000,  -0.591271763114250, -0.057543526228500,
                              0.091271763114250};
    return bank;
}

void WaveletFilterBank::validate() const {
    if (analysis_lowpass.size() != 9 || analysis_highpass.size() != 7)
        throw std::invalid_argument("WaveletFilterBank: wrong filter lengths");
}

namespace {

// Whole-point symmetric index: reflections about 0 and len-1, period 2*len-2.
inline int reflect(long long pos, int len) {
    const long long period = 2LL * len - 2;
    long long p = pos % period;
    if (p < 0) p += period;
    return static_cast<int>(p >= len ? period - p : p);
}

void check_scales(int length, int scales) {
    if (scales < 1) throw std::invalid_argument("dwt_forward: scales must be >= 1");
    int cur = length;
    for (int s = 0; s < scales; ++s) {
        if (cur < 4)
            throw std::invalid_argument(
                "dwt_forward: field too short for requested scales (scale input length " +
                std::to_string(cur) + " < 4)");
        cur = (cur + 1) / 2;
    }
}

void forward_scale(const std::vector<double>& u, const WaveletFilterBank& bank,
                   std::vector<double>& approx, std::vector<double>& detail) {
    const int len = static_cast<int>(u.size());
    const int la = (len + 1) / 2;
    const int ld = len / 2;
    approx.assign(la, 0.0);
    detail.assign(ld, 0.0);
    for (int k = 0; k < la; ++k) {
        double acc = 0.0;
        for (int n = -4; n <= 4; ++n) acc += bank.alp(n) * u[reflect(2LL * k + n, len)];
        approx[k] = acc;
    }
    for (int k = 0; k < ld; ++k) {
        double acc = 0.0;
        for (int n = -3; n <= 3; ++n) acc += bank.ahp(n) * u[reflect(2LL * k + 1 + n, len)];
        detail[k] = acc;
    }
}

std::vector<double> inverse_scale(const std::vector<double>& approx,
                                  const std::vector<double>& detail, int len,
                                  const WaveletFilterBank& bank) {
    std::vector<double> u(len, 0.0);
    for (int i = 0; i < len; ++i) {
        double acc = 0.0;
        for (int j = i - 3; j <= i + 3; ++j) {
            if (((j % 2) + 2) % 2 == 0) acc += bank.syn_lp(i - j) * approx[reflect(j, len) / 2];
        }
        for (int j = i - 4; j <= i + 4; ++j) {
            if (((j % 2) + 2) % 2 != 0)
                acc += bank.syn_hp(i - j) * detail[(reflect(j, len) - 1) / 2];
        }
        u[i] = acc;
    }
    return u;
}

}  // namespace

MultiscaleDecomposition dwt_forward(const Field& field, const WaveletFilterBank& bank,
                                    int scales) {
    field.grid.validate();
    if (static_cast<int>(field.values.size()) != field.grid.n_points)
        throw std::invalid_argument("dwt_forward: values length does not match grid");
    bank.validate();
    check_scales(field.grid.n_points, scales);

    MultiscaleDecomposition decomp;
    decomp.grid = field.grid;
    decomp.scales = scales;
    std::vector<double> cur = field.values;
    for (int s = 0; s < scales; ++s) {
        decomp.input_lengths.push_back(static_cast<int>(cur.size()));
        std::vector<double> approx, detail;
        forward_scale(cur, bank, approx, detail);
        decomp.details.push_back(std::move(detail));
        cur = std::move(approx);
    }
    decomp.approximation = std::move(cur);
    return decomp;
}

Field dwt_inverse(const MultiscaleDecomposition& decomp, const WaveletFilterBank& bank) {
    bank.validate();
    const int scales = decomp.scales;
    if (scales < 1 || static_cast<int>(decomp.details.size()) != scales ||
        static_cast<int>(decomp.input_lengths.size()) != scales)
        throw std::invalid_argument("dwt_inverse: inconsistent decomposition shape");
    std::vector<double> cur = decomp.approximation;
    for (int s = scales - 1; s >= 0; --s) {
        const int len = decomp.input_lengths[s];
        if (static_cast<int>(cur.size()) != (len + 1) / 2 ||
            static_cast<int>(decomp.details[s].size()) != len / 2)
            throw std::invalid_argument("dwt_inverse: scale " + std::to_string(s) +
                                        " has wrong coefficient counts");
        cur = inverse_scale(cur, decomp.details[s], len, bank);
    }
    if (static_cast<int>(cur.size()) != decomp.grid.n_points)
        throw std::invalid_argument("dwt_inverse: reconstruction length does not match grid");
    return Field{decomp.grid, std::move(cur)};
}

HighPassMeasure highpass_measure(const Field& field, const WaveletFilterBank& bank,
                                 int scales) {
    const MultiscaleDecomposition decomp = dwt_forward(field, bank, scales);
    HighPassMeasure m;
    for (const std::vector<double>& d : decomp.details) {
        double s = 0.0;
        for (double v : d) s += std::abs(v);
        m.per_scale.push_back(s);
        m.total += s;
    }
    return m;
}

}  // namespace cfor
