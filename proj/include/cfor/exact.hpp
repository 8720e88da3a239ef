#pragma once

#include <vector>

#include "cfor/grid.hpp"

namespace cfor {

// series_terms = 0 selects an adaptive cap based on the coefficient decay.
// quadrature_points seeds the fallback integral's resolution.
struct ExactSolutionSpec {
    double reynolds = 100.0;
    int series_terms = 0;
    int quadrature_points = 2048;
    void validate() const;
};

struct ErrorReport {
    double t = 0.0;
    double l_inf = 0.0;  // max absolute deviation
    double l_1 = 0.0;    // mean absolute deviation
};

// Closed-form solution of the viscous problem with u(x,0) = sin(pi x) and
// pinned boundaries, from the heat-equation transform:
//   u = 2 pi nu (sum a_n n E_n sin n pi x) / (a_0 + sum a_n E_n cos n pi x),
//   E_n = exp(-n^2 pi^2 nu t), a_n = 2 e^{-z} I_n(z), z = Re/(2 pi).
// Series terms accumulate in double-double; when the denominator loses too
// many digits the value is recomputed from the heat-kernel integral (t > 0).
double cole_exact(double x, double t, const ExactSolutionSpec& spec);

ErrorReport error_norms(const Field& numeric, double t, const ExactSolutionSpec& spec);

namespace detail {
// Bessel-form coefficients a_0..a_nmax and their quadrature cross-check
// (trapezoid doubling on the transformed initial profile).
std::vector<double> coefficients_bessel(double reynolds, int nmax);
std::vector<double> coefficients_quadrature(double reynolds, int nmax);
// Direct heat-kernel quotient on a truncated window, adaptive trapezoid.
double cole_integral(double reynolds, double x, double t, int initial_points);
}  // namespace detail

}  // namespace cfor
