#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace rivlin {

/// Incompressible two-term Mooney-Rivlin material,
///   W = mu1/2 (l1^2 + l2^2 + l3^2 - 3) + mu2/2 (l1^-2 + l2^-2 + l3^-2 - 3).
/// mu2 == 0 is the neo-Hookean special case. Construction rejects mu1 <= 0
/// and mu = mu1 + mu2 <= 0.
class MaterialModel {
 public:
  MaterialModel(double mu1, double mu2);

  static MaterialModel neo_hookean(double mu) { return {mu, 0.0}; }

  double mu1() const noexcept { return mu1_; }
  double mu2() const noexcept { return mu2_; }
  double shear_modulus() const noexcept { return mu1_ + mu2_; }
  bool is_neo_hookean() const noexcept { return mu2_ == 0.0; }

  /// Both coefficients multiplied by c > 0.
  MaterialModel scaled(double c) const;

 private:
  double mu1_;
  double mu2_;
};

/// Principal stretches of a homogeneous triaxial deformation with
/// l1 l2 l3 = 1 (to within kIncompressibilityTol).
class StretchTriple {
 public:
  static constexpr double kIncompressibilityTol = 1e-12;

  StretchTriple(double l1, double l2, double l3);

  static StretchTriple identity() { return {1.0, 1.0, 1.0}; }

  double operator[](std::size_t i) const { return values_[i]; }
  const std::array<double, 3>& values() const noexcept { return values_; }

  /// Triple (l[i], l[j], l[k]).
  StretchTriple permuted(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  std::array<double, 3> values_;
};

enum class Regime { NeoHookean, E11, E12, E21, E22, Inadmissible };

std::string_view to_string(Regime regime);

using PrincipalValues = std::array<double, 3>;

/// 5^(5/3); mu2 / mu1 = -1/5^(5/3) separates E2.1 from E2.2.
inline constexpr double kFiveToFiveThirds = 14.62008869106433;

/// -mu1 / 5^(5/3), the lower end of the E2.1 interval.
double negative_regime_bound(double mu1);

double strain_energy(const MaterialModel& model, const StretchTriple& s);

/// T_i = -p + mu1 l_i^2 - mu2 / l_i^2.
PrincipalValues principal_cauchy_stress(const MaterialModel& model, const StretchTriple& s,
                                        double pressure);

/// P_i = T_i / l_i.
PrincipalValues principal_piola_stress(const MaterialModel& model, const StretchTriple& s,
                                       double pressure);

/// Baker-Ericksen: mu1 + mu2 l_k^2 > 0 for every pair i != j with l_i != l_j,
/// k being the remaining index. Stretches within 1e-12 count as equal.
bool baker_ericksen_holds(const MaterialModel& model, const StretchTriple& s);

/// Regime from the raw coefficient pair; Inadmissible when mu1 <= 0 or mu <= 0.
Regime classify_regime(double mu1, double mu2);
Regime classify_regime(const MaterialModel& model);

}  // namespace rivlin
