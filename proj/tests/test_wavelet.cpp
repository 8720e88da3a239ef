#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cfor/wavelet.hpp"

using namespace cfor;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

Field random_field(int n, unsigned seed) {
    Grid g{n, 0.0, 1.0};
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Field f{g, std::vector<double>(n)};
    for (double& v : f.values) v = dist(rng);
    return f;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("filter bank identities") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    CHECK_NOTHROW(bank.validate());

    // Lowpass passes DC with unit gain, highpass rejects it, and the
    // highpass gain at the alternating mode is exactly 2.
    double lp_sum = 0.0, hp_sum = 0.0, hp_alt = 0.0;
    for (int n = -4; n <= 4; ++n) lp_sum += bank.alp(n);
    for (int n = -3; n <= 3; ++n) {
        hp_sum += bank.ahp(n);
        hp_alt += (n % 2 == 0 ? 1.0 : -1.0) * bank.ahp(n);
    }
    CHECK(std::abs(lp_sum - 1.0) <= 5e-12);
    CHECK(std::abs(hp_sum) <= 5e-12);
    CHECK(std::abs(hp_alt - 2.0) <= 5e-12);

    for (int n = -4; n <= 4; ++n) {
        CHECK(bank.syn_hp(n) == (n % 2 == 0 ? 1.0 : -1.0) * bank.alp(n));
        CHECK(bank.syn_lp(n) == (n % 2 == 0 ? 1.0 : -1.0) * bank.ahp(n));
    }
    CHECK(bank.alp(5) == 0.0);
    CHECK(bank.ahp(-4) == 0.0);

    WaveletFilterBank broken = bank;
    broken.analysis_highpass.pop_back();
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("perfect reconstruction across lengths") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    double worst = 0.0;
    for (int n = 32; n <= 256; n += 8) {
        Field f = random_field(n, 1000u + n);
        MultiscaleDecomposition dec = dwt_forward(f, bank, 3);
        Field rec = dwt_inverse(dec, bank);
        double err = 0.0;
        for (int k = 0; k < n; ++k)
            err = std::max(err, std::abs(rec.values[k] - f.values[k]));
        worst = std::max(worst, err / max_abs(f.values));
    }
    CHECK(worst <= 1e-10);

    for (int n : {41, 63, 101}) {
        Field f = random_field(n, 77u + n);
        Field rec = dwt_inverse(dwt_forward(f, bank, 3), bank);
        double err = 0.0;
        for (int k = 0; k < n; ++k)
            err = std::max(err, std::abs(rec.values[k] - f.values[k]));
        CHECK(err / max_abs(f.values) <= 1e-10);
    }
}

TEST_CASE("decomposition bookkeeping") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    Field f = random_field(41, 5);
    MultiscaleDecomposition dec = dwt_forward(f, bank, 3);
    CHECK(dec.scales == 3);
    CHECK(dec.input_lengths == std::vector<int>{41, 21, 11});
    CHECK(dec.details[0].size() == 20);
    CHECK(dec.details[1].size() == 10);
    CHECK(dec.details[2].size() == 5);
    CHECK(dec.approximation.size() == 6);
    size_t count = dec.approximation.size();
    for (const auto& d : dec.details) count += d.size();
    CHECK(count == 41);
}

TEST_CASE("zero and constant fields produce no detail") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    Grid g{64, 0.0, 1.0};

    MultiscaleDecomposition z = dwt_forward(Field{g, std::vector<double>(64, 0.0)}, bank, 3);
    for (const auto& d : z.details) CHECK(max_abs(d) == 0.0);
    CHECK(max_abs(z.approximation) == 0.0);

    MultiscaleDecomposition c = dwt_forward(Field{g, std::vector<double>(64, 0.8)}, bank, 3);
    for (const auto& d : c.details) CHECK(max_abs(d) <= 1e-12);
    for (double a : c.approximation) CHECK(a == doctest::Approx(0.8).epsilon(1e-11));
    CHECK(highpass_measure(Field{g, std::vector<double>(64, 0.8)}, bank, 3).total <= 1e-10);
}

TEST_CASE("the analysis highpass annihilates low-degree polynomials") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    Grid g{64, 0.0, 1.0};
    for (int deg = 0; deg <= 3; ++deg) {
        Field f{g, std::vector<double>(64)};
        for (int k = 0; k < 64; ++k) f.values[k] = std::pow(g.node(k), deg);
        MultiscaleDecomposition dec = dwt_forward(f, bank, 1);
        double interior = 0.0;
        for (size_t k = 2; k + 2 < dec.details[0].size(); ++k)
            interior = std::max(interior, std::abs(dec.details[0][k]));
        CHECK(interior <= 1e-10);
        if (deg == 0) CHECK(max_abs(dec.details[0]) <= 1e-12);
    }
}

TEST_CASE("measure is absolutely homogeneous") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    Field f = random_field(64, 424242);
    HighPassMeasure m1 = highpass_measure(f, bank, 3);
    Field scaled = f;
    for (double& v : scaled.values) v *= 3.7;
    HighPassMeasure m2 = highpass_measure(scaled, bank, 3);
    CHECK(std::abs(m2.total - 3.7 * m1.total) / (3.7 * m1.total) <= 1e-12);
    for (int s = 0; s < 3; ++s)
        CHECK(std::abs(m2.per_scale[s] - 3.7 * m1.per_scale[s]) <=
              1e-12 * (1.0 + 3.7 * m1.per_scale[s]));
    CHECK(m1.total ==
          doctest::Approx(m1.per_scale[0] + m1.per_scale[1] + m1.per_scale[2])
              .epsilon(1e-14));
}

TEST_CASE("measure satisfies the triangle inequality") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    Field u = random_field(64, 11);
    Field v = random_field(64, 12);
    Field sum = u;
    for (int k = 0; k < 64; ++k) sum.values[k] += v.values[k];
    HighPassMeasure mu = highpass_measure(u, bank, 3);
    HighPassMeasure mv = highpass_measure(v, bank, 3);
    HighPassMeasure ms = highpass_measure(sum, bank, 3);
    CHECK(ms.total <= mu.total + mv.total + 1e-12 * (mu.total + mv.total));
}

TEST_CASE("measure separates smooth from oscillatory by an order of magnitude") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    Grid g{64, 0.0, 1.0};
    Field smooth{g, std::vector<double>(64)};
    Field nyq{g, std::vector<double>(64)};
    for (int k = 0; k < 64; ++k) {
        const double s = std::sin(kPi * g.node(k));
        smooth.values[k] = s;
        nyq.values[k] = (k % 2 == 0 ? 1.0 : -1.0) * s;  // highest mode, equal amplitude
    }
    HighPassMeasure ms = highpass_measure(smooth, bank, 3);
    HighPassMeasure mn = highpass_measure(nyq, bank, 3);
    CHECK(mn.total / ms.total >= 10.0);

    // A 10% contamination still lands near the 10x line; record it loosely.
    Field mixed = smooth;
    for (int k = 0; k < 64; ++k) mixed.values[k] += 0.1 * nyq.values[k];
    HighPassMeasure mm = highpass_measure(mixed, bank, 3);
    CHECK(mm.total / ms.total >= 5.0);
}

TEST_CASE("killing the details smooths a kinked field") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    Grid g{65, 0.0, 1.0};
    Field tent{g, std::vector<double>(65)};
    for (int k = 0; k < 65; ++k) {
        const double x = g.node(k);
        tent.values[k] = x < 0.5 ? x : 1.0 - x;
    }
    MultiscaleDecomposition dec = dwt_forward(tent, bank, 3);
    for (auto& d : dec.details) std::fill(d.begin(), d.end(), 0.0);
    Field recon = dwt_inverse(dec, bank);
    HighPassMeasure before = highpass_measure(tent, bank, 3);
    HighPassMeasure after = highpass_measure(recon, bank, 3);
    CHECK(after.total < 0.2 * before.total);
}

TEST_CASE("short fields and malformed decompositions are rejected") {
    WaveletFilterBank bank = WaveletFilterBank::cdf97();
    Field f8 = random_field(8, 3);
    CHECK_NOTHROW(dwt_forward(f8, bank, 2));
    CHECK_THROWS_AS(dwt_forward(f8, bank, 3), std::invalid_argument);
    CHECK_THROWS_AS(dwt_forward(f8, bank, 0), std::invalid_argument);

    Field f = random_field(41, 9);
    MultiscaleDecomposition dec = dwt_forward(f, bank, 3);
    MultiscaleDecomposition bad = dec;
    bad.details[1].push_back(0.0);
    CHECK_THROWS_AS(dwt_inverse(bad, bank), std::invalid_argument);
    bad = dec;
    bad.approximation.pop_back();
    CHECK_THROWS_AS(dwt_inverse(bad, bank), std::invalid_argument);
    bad = dec;
    bad.details.pop_back();
    CHECK_THROWS_AS(dwt_inverse(bad, bank), std::invalid_argument);
}
