#pragma once

namespace polyrelax {

// Error function via the non-alternating scaled Maclaurin series,
// |erf_kernel(x) - erf(x)| <= 1e-12 for all finite x.
double erf_kernel(double x);

// d/dx erf(x) = (2/sqrt(pi)) * exp(-x^2), exact by formula.
double erf_prime(double x);

// Gamma function for x > 0 via the Lanczos approximation (g = 7, 9
// coefficients); relative error <= 1e-10 on [0.5, 20].
double gamma_kernel(double x);

// d/dx Gamma(x) = Gamma(x) * psi(x).
double gamma_prime(double x);

// Digamma psi(x) = Gamma'(x)/Gamma(x) for x > 0, via recurrence shift to
// x >= 10 plus the Bernoulli asymptotic series.
double digamma(double x);

} // namespace polyrelax
