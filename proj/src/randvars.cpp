#include "rivlin/randvars.hpp"

#include <cmath>
#include <sstream>

#include "rivlin/constitutive.hpp"
#include "rivlin/errors.hpp"
#include "rivlin/special_functions.hpp"

namespace rivlin {
namespace {

constexpr double kNegativeShift = 1.0 / kFiveToFiveThirds;

double standard_gamma(double shape, RandomStream& stream) {
  if (shape < 1.0) {
    const double boost = std::pow(stream.uniform(), 1.0 / shape);
    return standard_gamma(shape + 1.0, stream) * boost;
  }
  // Marsaglia-Tsang squeeze/rejection.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = stream.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = stream.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

GammaParams::GammaParams(double shape, double scale) : rho1(shape), rho2(scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
    std::ostringstream msg;
    msg << "Gamma hyperparameters must be positive, got (" << shape << ", " << scale << ")";
    throw std::invalid_argument(msg.str());
  }
}

BetaParams::BetaParams(double a, double b) : xi1(a), xi2(b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << "Beta hyperparameters must be positive, got (" << a << ", " << b << ")";
    throw std::invalid_argument(msg.str());
  }
}

double BetaParams::variance() const {
  const double n = xi1 + xi2;
  return xi1 * xi2 / (n * n * (n + 1.0));
}

double gamma_pdf(const GammaParams& g, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 0.0;
  return std::exp(special::log_gamma_kernel(g.rho1, x / g.rho2)) / x;
}

double gamma_cdf(const GammaParams& g, double x) {
  return special::gamma_p(g.rho1, x / g.rho2);
}

double beta_pdf(const BetaParams& b, double r) {
  if (!(r > 0.0) || !(r < 1.0)) return 0.0;
  return std::exp(special::log_beta_kernel(b.xi1, b.xi2, r)) / (r * (1.0 - r));
}

double beta_cdf(const BetaParams& b, double r) { return special::beta_inc(b.xi1, b.xi2, r); }

double sample_gamma(const GammaParams& g, RandomStream& stream) {
  return standard_gamma(g.rho1, stream) * g.rho2;
}

double sample_beta(const BetaParams& b, RandomStream& stream) {
  for (;;) {
    const double x = standard_gamma(b.xi1, stream);
    const double y = standard_gamma(b.xi2, stream);
    const double r = x / (x + y);
    if (r > 0.0 && r < 1.0) return r;
  }
}

GammaParams gamma_from_moments(double mean, double variance) {
  if (!(mean > 0.0) || !(variance > 0.0)) {
    std::ostringstream msg;
    msg << "Gamma moments need mean > 0 and variance > 0, got (" << mean << ", " << variance
        << ")";
    throw InfeasibleMomentsError(msg.str());
  }
  return {mean * mean / variance, variance / mean};
}

BetaParams beta_from_moments(double mean, double variance) {
  if (!(mean > 0.0 && mean < 1.0) || !(variance > 0.0) || !(variance < mean * (1.0 - mean))) {
    std::ostringstream msg;
    msg << "Beta moments need 0 < mean < 1 and 0 < variance < mean (1 - mean), got (" << mean
        << ", " << variance << ")";
    throw InfeasibleMomentsError(msg.str());
  }
  const double n = mean * (1.0 - mean) / variance - 1.0;
  return {mean * n, (1.0 - mean) * n};
}

Coefficients coeffs_from(double mu, double r1, const ShiftMode& mode) {
  if (!(mu > 0.0)) throw DomainError("coeffs_from requires mu > 0");
  if (!(r1 > 0.0 && r1 < 1.0)) {
    std::ostringstream msg;
    msg << "coeffs_from requires 0 < r1 < 1, got " << r1;
    throw DomainError(msg.str());
  }
  double mu1 = 0.0;
  switch (mode.kind) {
    case ShiftMode::Kind::Zero:
      mu1 = r1 * mu;
      break;
    case ShiftMode::Kind::NegativeCase:
      mu1 = r1 * mu / (1.0 + kNegativeShift - 2.0 * kNegativeShift * r1);
      break;
    case ShiftMode::Kind::Explicit:
      mu1 = r1 * (mu - 2.0 * mode.b) + mode.b;
      break;
  }
  return {mu1, mu - mu1};
}

double r1_from_coeffs(double mu1, double mu2, const ShiftMode& mode) {
  const double mu = mu1 + mu2;
  switch (mode.kind) {
    case ShiftMode::Kind::Zero:
      return mu1 / mu;
    case ShiftMode::Kind::NegativeCase:
      return mu1 * (1.0 + kNegativeShift) / (mu + 2.0 * mu1 * kNegativeShift);
    case ShiftMode::Kind::Explicit:
      return (mu1 - mode.b) / (mu - 2.0 * mode.b);
  }
  return mu1 / mu;
}

CoefficientMoments coeff_moments(const GammaParams& g, const BetaParams& b, double shift_b) {
  const double mean_mu = g.mean();
  const double var_mu = g.variance();
  const double mean_r = b.mean();
  const double var_r = b.variance();
  const double spread = mean_mu - 2.0 * shift_b;

  CoefficientMoments m{};
  m.mean_mu1 = mean_r * spread + shift_b;
  m.mean_mu2 = mean_mu - m.mean_mu1;
  m.var_mu1 = spread * spread * var_r + mean_r * mean_r * var_mu + var_mu * var_r;
  m.var_mu2 = spread * spread * var_r + (1.0 - mean_r) * (1.0 - mean_r) * var_mu + var_mu * var_r;
  m.cov_mu1_mu2 = 0.5 * (var_mu - m.var_mu1 - m.var_mu2);
  return m;
}

}  // namespace rivlin
