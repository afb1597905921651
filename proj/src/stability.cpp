#include "rivlin/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "rivlin/errors.hpp"

namespace rivlin {
namespace {

// psi(l) = w(l) - tau l, one principal term of Psi.
struct PsiTerm {
  double mu1, mu2, tau;
  double value(double l) const {
    return 0.5 * mu1 * (l * l - 1.0) + 0.5 * mu2 * (1.0 / (l * l) - 1.0) - tau * l;
  }
  double d1(double l) const { return mu1 * l - mu2 / (l * l * l) - tau; }
  double d2(double l) const { return mu1 + 3.0 * mu2 / (l * l * l * l); }
};

// Rank for the meet across charts: lower is more pessimistic.
int rank(StabilityClass c) {
  switch (c) {
    case StabilityClass::Unstable: return 0;
    case StabilityClass::Marginal: return 1;
    case StabilityClass::NeutrallyStable: return 2;
    case StabilityClass::Stable: return 3;
  }
  return 0;
}

enum class Definiteness { Positive, Negative, Indefinite, Singular };

Definiteness definiteness(const Eigen::Matrix2d& h, double tol) {
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h, Eigen::EigenvaluesOnly).eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (lo > tol) return Definiteness::Positive;
  if (hi < -tol) return Definiteness::Negative;
  if (lo < -tol) return Definiteness::Indefinite;
  return Definiteness::Singular;
}

}  // namespace

std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Stable: return "Stable";
    case StabilityClass::NeutrallyStable: return "NeutrallyStable";
    case StabilityClass::Unstable: return "Unstable";
    case StabilityClass::Marginal: return "Marginal";
  }
  return "Unstable";
}

double psi_value(const MaterialModel& model, const StretchTriple& s, double tau) {
  return strain_energy(model, s) - tau * (s[0] + s[1] + s[2]);
}

PsiEvaluation reduced_psi_derivatives(const MaterialModel& model, double l1, double l2,
                                      double tau) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) {
    throw std::invalid_argument("reduced_psi_derivatives: stretches must be positive");
  }
  const PsiTerm psi{model.mu1(), model.mu2(), tau};
  const double l3 = 1.0 / (l1 * l2);
  const double d3 = psi.d1(l3);
  const double dd3 = psi.d2(l3);
  const double r1 = l3 / l1;
  const double r2 = l3 / l2;

  PsiEvaluation out;
  out.value = psi.value(l1) + psi.value(l2) + psi.value(l3);
  out.gradient << psi.d1(l1) - d3 * r1, psi.d1(l2) - d3 * r2;
  const double h11 = psi.d2(l1) + dd3 * r1 * r1 + 2.0 * d3 * l3 / (l1 * l1);
  const double h22 = psi.d2(l2) + dd3 * r2 * r2 + 2.0 * d3 * l3 / (l2 * l2);
  const double h12 = dd3 * r1 * r2 + d3 * l3 / (l1 * l2);
  out.hessian << h11, h12, h12, h22;
  return out;
}

StabilityClass classify_equilibrium(const MaterialModel& model, const Equilibrium& eq) {
  const double tau = eq.tau;
  const double residual = equilibrium_residual(model, eq);
  if (!(residual <= 1e-9 * std::max(1.0, std::abs(tau)))) {
    std::ostringstream msg;
    msg << "equilibrium residual " << residual << " exceeds tolerance at tau = " << tau;
    throw InconsistentInputError(msg.str());
  }
  const double tol = 1e-8 * (model.shear_modulus() + std::abs(tau));

  if (eq.branch == BranchKind::Trivial) {
    if (tau < 0.0) return StabilityClass::Unstable;
    if (tau == 0.0) return StabilityClass::NeutrallyStable;
    switch (definiteness(reduced_psi_derivatives(model, 1.0, 1.0, tau).hessian, tol)) {
      case Definiteness::Positive: return StabilityClass::Stable;
      case Definiteness::Singular: return StabilityClass::Marginal;
      default: return StabilityClass::Unstable;
    }
  }

  const auto& l = eq.stretches.values();
  constexpr std::array<std::pair<int, int>, 3> charts{{{0, 1}, {1, 2}, {0, 2}}};
  StabilityClass worst = StabilityClass::NeutrallyStable;
  for (const auto& [i, j] : charts) {
    const auto d = definiteness(reduced_psi_derivatives(model, l[i], l[j], tau).hessian, tol);
    StabilityClass c = StabilityClass::NeutrallyStable;
    if (d == Definiteness::Negative || d == Definiteness::Indefinite) {
      c = StabilityClass::Unstable;
    } else if (d == Definiteness::Singular) {
      c = StabilityClass::Marginal;
    }
    if (rank(c) < rank(worst)) worst = c;
  }
  return worst;
}

StabilityClass nh_closed_form_stability(double mu, double lambda, double tau) {
  if (!(mu > 0.0) || !(lambda > 0.0)) {
    throw DomainError("nh_closed_form_stability requires mu > 0 and lambda > 0");
  }
  if (lambda == 1.0) throw DomainError("lambda = 1 is the reference state, not a branch point");
  const double on_branch = mu * (lambda + 1.0 / std::sqrt(lambda));
  if (std::abs(tau - on_branch) > 1e-9 * std::max(1.0, std::abs(tau))) {
    std::ostringstream msg;
    msg << "(lambda, tau) = (" << lambda << ", " << tau
        << ") is not on the neo-Hookean two-equal branch";
    throw DomainError(msg.str());
  }
  const double lambda_star = tau / (3.0 * mu);
  if (std::abs(lambda - lambda_star) <= 1e-10) return StabilityClass::Marginal;
  return lambda < lambda_star ? StabilityClass::NeutrallyStable : StabilityClass::Unstable;
}

double infimum_objective(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("infimum_objective requires lambda > 0");
  const double s = std::sqrt(lambda);
  const double s2 = s * s;
  return s2 * (s2 + s - 1.0) / (s2 + s + 1.0);
}

const InfimumInfo& infimum_info() {
  static const InfimumInfo info = [] {
    // Golden-section search; the objective is unimodal on (0, 1).
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0;
    double b = 1.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = infimum_objective(c);
    double fd = infimum_objective(d);
    while (b - a > 1e-12) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = infimum_objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = infimum_objective(d);
      }
    }
    const double x = 0.5 * (a + b);
    return InfimumInfo{infimum_objective(x), x};
  }();
  return info;
}

double infimum_threshold() { return infimum_info().value; }

bool has_stable_plate_past_tau0(const MaterialModel& model) {
  const Regime regime = classify_regime(model);
  if (regime != Regime::E21) {
    std::ostringstream msg;
    msg << "has_stable_plate_past_tau0 applies to regime E21 only, got " << to_string(regime);
    throw RegimeError(msg.str());
  }
  const double ratio = model.mu2() / model.mu1();
  return infimum_threshold() < ratio && ratio < 0.0;
}

}  // namespace rivlin
