#include "rivlin/constitutive.hpp"

#include <cmath>
#include <sstream>

#include "rivlin/errors.hpp"

namespace rivlin {

MaterialModel::MaterialModel(double mu1, double mu2) : mu1_(mu1), mu2_(mu2) {
  if (!std::isfinite(mu1) || !std::isfinite(mu2)) {
    throw InvalidModelError("material coefficients must be finite");
  }
  if (mu1 <= 0.0) {
    std::ostringstream msg;
    msg << "mu1 must be positive (got " << mu1 << ")";
    throw InvalidModelError(msg.str());
  }
  if (mu1 + mu2 <= 0.0) {
    std::ostringstream msg;
    msg << "shear modulus mu1 + mu2 must be positive (got " << mu1 + mu2 << ")";
    throw InvalidModelError(msg.str());
  }
}

MaterialModel MaterialModel::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("scale factor must be positive");
  return {c * mu1_, c * mu2_};
}

StretchTriple::StretchTriple(double l1, double l2, double l3) : values_{l1, l2, l3} {
  for (double l : values_) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw std::invalid_argument("principal stretches must be positive and finite");
    }
  }
  if (std::abs(l1 * l2 * l3 - 1.0) > kIncompressibilityTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "stretches violate incompressibility: l1 l2 l3 = " << l1 * l2 * l3;
    throw std::invalid_argument(msg.str());
  }
}

StretchTriple StretchTriple::permuted(std::size_t i, std::size_t j, std::size_t k) const {
  return {values_.at(i), values_.at(j), values_.at(k)};
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::NeoHookean: return "NeoHookean";
    case Regime::E11: return "E11";
    case Regime::E12: return "E12";
    case Regime::E21: return "E21";
    case Regime::E22: return "E22";
    case Regime::Inadmissible: return "Inadmissible";
  }
  return "Inadmissible";
}

double negative_regime_bound(double mu1) { return -mu1 / kFiveToFiveThirds; }

double strain_energy(const MaterialModel& model, const StretchTriple& s) {
  double sum_sq = 0.0;
  double sum_inv_sq = 0.0;
  for (double l : s.values()) {
    sum_sq += l * l;
    sum_inv_sq += 1.0 / (l * l);
  }
  return 0.5 * model.mu1() * (sum_sq - 3.0) + 0.5 * model.mu2() * (sum_inv_sq - 3.0);
}

PrincipalValues principal_cauchy_stress(const MaterialModel& model, const StretchTriple& s,
                                        double pressure) {
  PrincipalValues t{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double l2 = s[i] * s[i];
    t[i] = -pressure + model.mu1() * l2 - model.mu2() / l2;
  }
  return t;
}

PrincipalValues principal_piola_stress(const MaterialModel& model, const StretchTriple& s,
                                       double pressure) {
  PrincipalValues p = principal_cauchy_stress(model, s, pressure);
  for (std::size_t i = 0; i < 3; ++i) p[i] /= s[i];
  return p;
}

bool baker_ericksen_holds(const MaterialModel& model, const StretchTriple& s) {
  constexpr double kEqualTol = 1e-12;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = (k + 1) % 3;
    const std::size_t j = (k + 2) % 3;
    if (std::abs(s[i] - s[j]) <= kEqualTol) continue;
    if (!(model.mu1() + model.mu2() * s[k] * s[k] > 0.0)) return false;
  }
  return true;
}

Regime classify_regime(double mu1, double mu2) {
  if (!(mu1 > 0.0) || !(mu1 + mu2 > 0.0)) return Regime::Inadmissible;
  if (mu2 == 0.0) return Regime::NeoHookean;
  if (mu2 > 0.0) return mu2 >= mu1 / 3.0 ? Regime::E11 : Regime::E12;
  return mu2 <= negative_regime_bound(mu1) ? Regime::E22 : Regime::E21;
}

Regime classify_regime(const MaterialModel& model) {
  return classify_regime(model.mu1(), model.mu2());
}

}  // namespace rivlin
