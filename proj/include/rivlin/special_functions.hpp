#pragma once

namespace rivlin::special {

/// Stirling-series remainder: log Gamma(a + 1) - [(a + 1/2) log a - a + log sqrt(2 pi)].
double stirlerr(double a);

/// Deviance term a log(a / x) + x - a, evaluated without cancellation near a == x.
double bd0(double a, double x);

/// log(x^a e^-x / Gamma(a)) for a > 0, x > 0.
double log_gamma_kernel(double a, double x);

/// log(x^a (1 - x)^b / B(a, b)) for a, b > 0 and 0 < x < 1.
double log_beta_kernel(double a, double b, double x);

/// Regularized lower and upper incomplete gamma functions.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Regularized incomplete beta function I_x(a, b).
double beta_inc(double a, double b, double x);

}  // namespace rivlin::special
