#pragma once

#include "rivlin/rng.hpp"

namespace rivlin {

/// Gamma law with shape rho1 and scale rho2.
struct GammaParams {
  double rho1;
  double rho2;

  GammaParams(double shape, double scale);
  double mean() const { return rho1 * rho2; }
  double variance() const { return rho1 * rho2 * rho2; }
};

/// Beta law on (0, 1).
struct BetaParams {
  double xi1;
  double xi2;

  BetaParams(double a, double b);
  double mean() const { return xi1 / (xi1 + xi2); }
  double variance() const;
};

/// Lower bound b on the coefficients in R1 = (mu1 - b) / (mu - 2 b).
/// NegativeCase couples b to mu1 through b = -mu1 / 5^(5/3).
struct ShiftMode {
  enum class Kind { Zero, NegativeCase, Explicit };
  Kind kind = Kind::Zero;
  double b = 0.0;

  static ShiftMode zero() { return {Kind::Zero, 0.0}; }
  static ShiftMode negative_case() { return {Kind::NegativeCase, 0.0}; }
  static ShiftMode explicit_shift(double shift) { return {Kind::Explicit, shift}; }
};

struct Coefficients {
  double mu1;
  double mu2;
};

struct CoefficientMoments {
  double mean_mu1;
  double mean_mu2;
  double var_mu1;
  double var_mu2;
  double cov_mu1_mu2;
};

double gamma_pdf(const GammaParams& g, double x);
double gamma_cdf(const GammaParams& g, double x);
double beta_pdf(const BetaParams& b, double r);
double beta_cdf(const BetaParams& b, double r);

double sample_gamma(const GammaParams& g, RandomStream& stream);
double sample_beta(const BetaParams& b, RandomStream& stream);

/// Invert mean = rho1 rho2, variance = rho1 rho2^2. Throws InfeasibleMomentsError.
GammaParams gamma_from_moments(double mean, double variance);

/// Invert the Beta mean/variance relations; requires 0 < mean < 1 and
/// 0 < variance < mean (1 - mean). Throws InfeasibleMomentsError.
BetaParams beta_from_moments(double mean, double variance);

/// (mu, R1) -> (mu1, mu2). Throws DomainError unless mu > 0 and 0 < r1 < 1.
Coefficients coeffs_from(double mu, double r1, const ShiftMode& mode);

/// R1 recomputed from a coefficient pair under the given shift.
double r1_from_coeffs(double mu1, double mu2, const ShiftMode& mode);

/// Closed-form means, variances and covariance of (mu1, mu2) for a constant shift b.
CoefficientMoments coeff_moments(const GammaParams& g, const BetaParams& b, double shift_b);

}  // namespace rivlin
