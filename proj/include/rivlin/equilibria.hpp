#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rivlin/constitutive.hpp"

namespace rivlin {

enum class BranchKind { Trivial, RodLike, PlateLike, ThreeUnequal };

std::string_view to_string(BranchKind kind);

/// A homogeneous equilibrium under the equitriaxial dead load `tau`.
/// Canonical orientation: the distinct stretch on axis 1 for rod/plate
/// states, descending order for three unequal stretches. `multiplicity` is
/// the size of the orbit under stretch permutation (1, 3 or 6).
struct Equilibrium {
  StretchTriple stretches;
  BranchKind branch;
  double pressure;
  double tau;
  int multiplicity;
};

struct CriticalLoads {
  double tau0;  // 2 mu, loss of stability of the reference state
  std::optional<double> tau_star;
  std::optional<double> lambda_star;
  std::optional<double> tau_min;
  std::optional<double> tau_max;
  std::optional<double> lambda_at_min;
  std::optional<double> lambda_at_max;
};

/// Range of lambda3 on which the three-unequal branch (regime E1.2) exists.
/// At lambda3 in {lambda3_lo, lambda3_hi} the recovered pair coincides
/// (plate/rod intersection); at lambda3 in {turn_low, turn_high} one of the
/// pair equals lambda3 and the branch load has its maximum / minimum.
struct ThreeUnequalInterval {
  double lambda3_lo;  // lambda_** < 1, plate-like intersection
  double lambda3_hi;  // lambda^** > 1, rod-like intersection
  double turn_low;    // 1/sqrt(lambda^**)
  double turn_high;   // 1/sqrt(lambda_**)
};

struct BranchPoint {
  double lambda;
  double tau;
  BranchKind branch;
};

/// Lower bound on lambda for the two-equal branch: -mu2/mu1 when mu2 < 0
/// (Baker-Ericksen), else 0.
double two_equal_lower_bound(const MaterialModel& model);

/// Dead load on the branch (lambda, 1/sqrt(lambda), 1/sqrt(lambda)):
///   tau = (mu1 + mu2/lambda) (lambda + 1/sqrt(lambda)).
/// Throws DomainError for lambda <= 0 or lambda at/below the BE bound.
double dead_load_two_equal(const MaterialModel& model, double lambda);

/// Derivative of dead_load_two_equal with respect to lambda.
double dead_load_two_equal_slope(const MaterialModel& model, double lambda);

/// Dead load on the three-unequal branch parametrised by lambda3:
///   tau = mu2/l3 (mu1/mu2 + l3^2)(mu1/mu2 - 1/l3).
/// Throws DomainError for mu2 <= 0 or lambda3 outside the open interval
/// (lambda3_lo, lambda3_hi) of three_unequal_interval.
double dead_load_three_unequal(const MaterialModel& model, double lambda3);

/// mu1 - mu2 (l1 l2 + l2 l3 + l3 l1); zero on the three-unequal branch.
double unequal_constraint_residual(const MaterialModel& model, const StretchTriple& s);

/// Empty unless the model is in regime E1.2.
std::optional<ThreeUnequalInterval> three_unequal_interval(const MaterialModel& model);

/// Stretches (lambda1 >= lambda2 >= lambda3) on the three-unequal branch for a
/// given lambda3 inside the branch interval.
StretchTriple three_unequal_stretches(const MaterialModel& model, double lambda3);

/// Stationary points (in lambda) of dead_load_two_equal on its domain, ascending.
std::vector<double> two_equal_stationary_points(const MaterialModel& model);

/// Every homogeneous equilibrium at load tau: the trivial state, each
/// two-equal state with lambda != 1, and (regime E1.2 only) the three-unequal
/// state. One canonical representative per permutation orbit.
std::vector<Equilibrium> solve_equilibria(const MaterialModel& model, double tau);

/// Two-equal solutions lambda != 1 of dead_load_two_equal(lambda) = tau, ascending.
std::vector<double> two_equal_solutions(const MaterialModel& model, double tau);

/// Largest |mu1 l_i^2 - mu2/l_i^2 - tau l_i - p| over the three indices.
double equilibrium_residual(const MaterialModel& model, const Equilibrium& eq);

/// Pressure balancing the dead load on axis 1 of `s`.
double equilibrium_pressure(const MaterialModel& model, const StretchTriple& s, double tau);

CriticalLoads critical_loads(const MaterialModel& model);

/// Samples of the two-equal branch map over an ascending grid. Points at or
/// below the BE bound are skipped; lambda == 1 is labelled Trivial.
std::vector<BranchPoint> branch_trace(const MaterialModel& model,
                                      std::span<const double> lambda_grid);

}  // namespace rivlin
