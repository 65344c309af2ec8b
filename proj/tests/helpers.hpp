#pragma once

// Shared test-side utilities: independent derivative/series oracles and a
// deterministic RNG, kept apart from the library so tests cannot inherit its
// bugs.

#include <cmath>
#include <functional>
#include <random>

namespace testutil {

// Central finite difference with the step rule h = 1e-6 * max(1, |x|).
inline double central_diff(const std::function<double(double)>& f, double x) {
    const double h = 1e-6 * std::max(1.0, std::fabs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Alternating Maclaurin series for erf, accurate to double precision for
// |x| <= 2 at 50 terms; independent of the library's scaled-series kernel.
inline double erf_series_oracle(double x) {
    const double two_over_sqrt_pi = 1.1283791670955126;
    double term = x;        // x^(2n+1) / (n! (2n+1)), n = 0
    double sum = x;
    for (int n = 1; n < 50; ++n) {
        term *= -x * x / n;  // updates x^(2n+1)/n! part
        sum += term / (2 * n + 1);
    }
    return two_over_sqrt_pi * sum;
}

inline std::mt19937_64 seeded_rng(unsigned long long seed) {
    return std::mt19937_64(seed);
}

} // namespace testutil
