#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "rivlin/constitutive.hpp"
#include "rivlin/equilibria.hpp"

namespace rivlin {

// Stability here is the finite-dimensional consequence of the energy
// criterion: an equilibrium is tested as a local minimum of the total free
// energy over homogeneous triaxial stretches, not over arbitrary deformations.
enum class StabilityClass { Stable, NeutrallyStable, Unstable, Marginal };

std::string_view to_string(StabilityClass c);

/// Total free energy W(s) - tau (l1 + l2 + l3).
double psi_value(const MaterialModel& model, const StretchTriple& s, double tau);

/// phi(l1, l2) = Psi(l1, l2, 1/(l1 l2); tau) and its analytic first and
/// second derivatives.
struct PsiEvaluation {
  double value;
  Eigen::Vector2d gradient;
  Eigen::Matrix2d hessian;
};

PsiEvaluation reduced_psi_derivatives(const MaterialModel& model, double l1, double l2,
                                      double tau);

/// Trivial state: Unstable for tau < 0, NeutrallyStable at tau == 0, otherwise
/// Stable / Unstable by the reduced Hessian at (1, 1), Marginal when it is
/// singular (tau == 2 mu). Non-trivial states: NeutrallyStable when the
/// reduced Hessian is positive definite in all three charts, Unstable when any
/// chart has a negative eigenvalue, Marginal otherwise.
/// Throws InconsistentInputError when eq does not satisfy the equilibrium
/// equations to 1e-9 max(1, |tau|).
StabilityClass classify_equilibrium(const MaterialModel& model, const Equilibrium& eq);

/// Neo-Hookean two-equal branch: NeutrallyStable iff lambda < tau/(3 mu).
/// Throws DomainError when (lambda, tau) is not on the branch or lambda == 1.
StabilityClass nh_closed_form_stability(double mu, double lambda, double tau);

/// (l^(5/2) - 2 l^(3/2) + l) / (l^(3/2) - 1), evaluated in the cancelled form
/// s^2 (s^2 + s - 1) / (s^2 + s + 1) with s = sqrt(l). Defined for l > 0;
/// equals 1/3 at l = 1.
double infimum_objective(double lambda);

struct InfimumInfo {
  double value;
  double minimizer;
};

/// Minimum of infimum_objective over (0, 1), computed once.
const InfimumInfo& infimum_info();
double infimum_threshold();

/// Regime E2.1 only: true iff infimum_threshold() < mu2/mu1 < 0, i.e. the
/// plate-like branch keeps a neutrally stable part past tau0. Throws
/// RegimeError for other regimes.
bool has_stable_plate_past_tau0(const MaterialModel& model);

}  // namespace rivlin
