#include "rivlin/equilibria.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "detail/roots.hpp"
#include "rivlin/errors.hpp"

namespace rivlin {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTrivialMergeTol = 1e-8;

// Two-equal branch in s = sqrt(lambda):
//   tau(s)  = mu1 s^2 + mu1/s + mu2 + mu2/s^3
//   tau'(s) = h(s) / s^4,  h(s) = 2 mu1 s^5 - mu1 s^2 - 3 mu2.
// h'(s) = 2 mu1 s (5 s^3 - 1), so h has its only minimum at s = 5^(-1/3)
// and tau(s) has at most two stationary points.
double tau_of_s(const MaterialModel& m, double s) {
  const double s2 = s * s;
  return m.mu1() * s2 + m.mu1() / s + m.mu2() + m.mu2() / (s2 * s);
}

double tau_s_derivative(const MaterialModel& m, double s) {
  const double s2 = s * s;
  return 2.0 * m.mu1() * s - m.mu1() / s2 - 3.0 * m.mu2() / (s2 * s2);
}

std::vector<double> stationary_points_s(const MaterialModel& m) {
  const double mu1 = m.mu1();
  const double mu2 = m.mu2();
  const double s_lo = std::sqrt(two_equal_lower_bound(m));
  const double s_min_h = std::cbrt(0.2);
  auto h = [&](double s) {
    const double s2 = s * s;
    return std::pair{2.0 * mu1 * s2 * s2 * s - mu1 * s2 - 3.0 * mu2,
                     10.0 * mu1 * s2 * s2 - 2.0 * mu1 * s};
  };
  std::vector<double> roots;
  const double h_at_min = h(s_min_h).first;
  if (!(h_at_min < 0.0)) return roots;
  // h(s_lo) > 0 whenever mu2 < 0, and s_lo < 5^(-5/6) < 5^(-1/3) in E2.1.
  if (mu2 < 0.0 && s_lo < s_min_h) {
    roots.push_back(detail::solve_bracketed(h, s_lo, s_min_h, +1));
  }
  const double lo = std::max(s_lo, s_min_h);
  double hi = std::max(2.0 * lo, 1.0);
  while (h(hi).first <= 0.0) hi *= 2.0;
  roots.push_back(detail::solve_bracketed(h, lo, hi, -1));
  return roots;
}

// Positive roots of s^3 - k s + 1 = 0 (neo-Hookean two-equal branch).
std::vector<double> neo_hookean_roots_s(double k) {
  std::vector<double> roots;
  if (!(k > 0.0)) return roots;
  constexpr double kDoubleRootTol = 1e-12;
  const double cos_theta = -0.5 * std::sqrt(27.0 / (k * k * k));
  if (cos_theta < -1.0 - kDoubleRootTol) return roots;
  const double r = 2.0 * std::sqrt(k / 3.0);
  if (cos_theta <= -1.0 + kDoubleRootTol) {
    roots.push_back(0.5 * r);
    return roots;
  }
  const double theta = std::acos(cos_theta);
  for (double s : {r * std::cos(theta / 3.0), r * std::cos((theta - 2.0 * std::numbers::pi) / 3.0)}) {
    for (int it = 0; it < 2; ++it) {
      const double dp = 3.0 * s * s - k;
      if (std::abs(dp) <= 1e-6 * k) break;
      s -= (s * s * s - k * s + 1.0) / dp;
    }
    roots.push_back(s);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> mooney_rivlin_roots_s(const MaterialModel& m, double tau) {
  const double s_lo = std::sqrt(two_equal_lower_bound(m));
  const double tol = 1e-12 * std::max(1.0, std::abs(tau));
  auto g = [&](double s) { return std::pair{tau_of_s(m, s) - tau, tau_s_derivative(m, s)}; };

  std::vector<double> knots{s_lo};
  for (double s : stationary_points_s(m)) knots.push_back(s);
  knots.push_back(kInf);

  std::vector<double> roots;
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
    if (std::abs(g(knots[i]).first) <= tol) roots.push_back(knots[i]);
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    // tau -> 0 at the BE bound (mu2 < 0); tau -> +inf as s -> 0 or s -> inf.
    const int sign_a = i == 0 ? (s_lo > 0.0 ? -1 : +1) : detail::sign_with_tol(g(a).first, tol);
    const int sign_b = std::isinf(b) ? +1 : detail::sign_with_tol(g(b).first, tol);
    if (sign_a == 0 || sign_b == 0 || sign_a == sign_b) continue;
    double lo = a;
    double hi = b;
    if (i == 0 && s_lo == 0.0) {
      lo = 0.5 * (std::isinf(b) ? 1.0 : b);
      while (g(lo).first <= 0.0 && lo > 1e-300) lo *= 0.5;
    }
    if (std::isinf(b)) {
      hi = std::max(2.0 * a, 1.0);
      while (g(hi).first <= 0.0) hi *= 2.0;
    }
    roots.push_back(detail::solve_bracketed(g, lo, hi, sign_a));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> two_equal_roots_s(const MaterialModel& m, double tau) {
  if (!(tau > 0.0)) return {};
  std::vector<double> roots =
      m.is_neo_hookean() ? neo_hookean_roots_s(tau / m.mu1()) : mooney_rivlin_roots_s(m, tau);
  std::erase_if(roots, [](double s) { return std::abs(s * s - 1.0) <= kTrivialMergeTol; });
  return roots;
}

Equilibrium make_equilibrium(const MaterialModel& m, const StretchTriple& s, BranchKind kind,
                             double tau, int multiplicity) {
  return Equilibrium{s, kind, equilibrium_pressure(m, s, tau), tau, multiplicity};
}

}  // namespace

std::string_view to_string(BranchKind kind) {
  switch (kind) {
    case BranchKind::Trivial: return "Trivial";
    case BranchKind::RodLike: return "RodLike";
    case BranchKind::PlateLike: return "PlateLike";
    case BranchKind::ThreeUnequal: return "ThreeUnequal";
  }
  return "Trivial";
}

double two_equal_lower_bound(const MaterialModel& model) {
  return model.mu2() < 0.0 ? -model.mu2() / model.mu1() : 0.0;
}

double dead_load_two_equal(const MaterialModel& model, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("two-equal branch requires lambda > 0");
  if (model.mu2() < 0.0 && !(lambda > two_equal_lower_bound(model))) {
    std::ostringstream msg;
    msg << "lambda = " << lambda << " violates the Baker-Ericksen bound lambda > -mu2/mu1 = "
        << two_equal_lower_bound(model);
    throw DomainError(msg.str());
  }
  return (model.mu1() + model.mu2() / lambda) * (lambda + 1.0 / std::sqrt(lambda));
}

double dead_load_two_equal_slope(const MaterialModel& model, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("two-equal branch requires lambda > 0");
  const double s = std::sqrt(lambda);
  return tau_s_derivative(model, s) / (2.0 * s);
}

std::optional<ThreeUnequalInterval> three_unequal_interval(const MaterialModel& model) {
  if (classify_regime(model) != Regime::E12) return std::nullopt;
  // Endpoints solve 2 sqrt(l) + 1/l = mu1/mu2, i.e. F(s) = 2s + 1/s^2 - m = 0,
  // which has one root either side of its minimum F(1) = 3 - m < 0.
  const double ratio = model.mu1() / model.mu2();
  auto f = [&](double s) { return std::pair{2.0 * s + 1.0 / (s * s) - ratio, 2.0 - 2.0 / (s * s * s)}; };
  double lo = 0.5;
  while (f(lo).first <= 0.0) lo *= 0.5;
  const double s_plate = detail::solve_bracketed(f, lo, 1.0, +1);
  double hi = 2.0;
  while (f(hi).first <= 0.0) hi *= 2.0;
  const double s_rod = detail::solve_bracketed(f, 1.0, hi, -1);
  return ThreeUnequalInterval{s_plate * s_plate, s_rod * s_rod, 1.0 / s_rod, 1.0 / s_plate};
}

double dead_load_three_unequal(const MaterialModel& model, double lambda3) {
  if (!(model.mu2() > 0.0)) {
    throw DomainError("three unequal stretches require mu2 > 0");
  }
  const auto interval = three_unequal_interval(model);
  if (!interval) throw DomainError("three-unequal branch exists only for 0 < mu2 < mu1/3");
  if (!(lambda3 > interval->lambda3_lo && lambda3 < interval->lambda3_hi)) {
    std::ostringstream msg;
    msg << "lambda3 = " << lambda3 << " outside the three-unequal interval ("
        << interval->lambda3_lo << ", " << interval->lambda3_hi << ")";
    throw DomainError(msg.str());
  }
  const double ratio = model.mu1() / model.mu2();
  return model.mu2() / lambda3 * (ratio + lambda3 * lambda3) * (ratio - 1.0 / lambda3);
}

StretchTriple three_unequal_stretches(const MaterialModel& model, double lambda3) {
  if (!(model.mu2() > 0.0) || !(lambda3 > 0.0)) {
    throw DomainError("three-unequal branch requires mu2 > 0 and lambda3 > 0");
  }
  // l1 + l2 = (mu1/mu2 - 1/l3)/l3 and l1 l2 = 1/l3.
  const double ratio = model.mu1() / model.mu2();
  const double sum = (ratio - 1.0 / lambda3) / lambda3;
  const double product = 1.0 / lambda3;
  const double disc = sum * sum - 4.0 * product;
  if (!(sum > 0.0) || !(disc > 0.0)) {
    throw DomainError("lambda3 gives no real distinct pair on the three-unequal branch");
  }
  const double big = 0.5 * (sum + std::sqrt(disc));
  std::array<double, 3> l{big, product / big, lambda3};
  std::sort(l.begin(), l.end(), std::greater<>());
  return {l[0], l[1], l[2]};
}

double unequal_constraint_residual(const MaterialModel& model, const StretchTriple& s) {
  return model.mu1() - model.mu2() * (s[0] * s[1] + s[1] * s[2] + s[2] * s[0]);
}

std::vector<double> two_equal_stationary_points(const MaterialModel& model) {
  std::vector<double> out;
  for (double s : stationary_points_s(model)) out.push_back(s * s);
  return out;
}

std::vector<double> two_equal_solutions(const MaterialModel& model, double tau) {
  std::vector<double> out;
  for (double s : two_equal_roots_s(model, tau)) out.push_back(s * s);
  return out;
}

double equilibrium_pressure(const MaterialModel& model, const StretchTriple& s, double tau) {
  const double l = s[0];
  return model.mu1() * l * l - model.mu2() / (l * l) - tau * l;
}

double equilibrium_residual(const MaterialModel& model, const Equilibrium& eq) {
  double worst = 0.0;
  for (double l : eq.stretches.values()) {
    const double r = model.mu1() * l * l - model.mu2() / (l * l) - eq.tau * l - eq.pressure;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<Equilibrium> solve_equilibria(const MaterialModel& model, double tau) {
  std::vector<Equilibrium> out;
  out.push_back(make_equilibrium(model, StretchTriple::identity(), BranchKind::Trivial, tau, 1));
  if (!(tau > 0.0)) return out;

  for (double s : two_equal_roots_s(model, tau)) {
    const double inv = 1.0 / s;
    const BranchKind kind = s > 1.0 ? BranchKind::RodLike : BranchKind::PlateLike;
    out.push_back(make_equilibrium(model, StretchTriple(s * s, inv, inv), kind, tau, 3));
  }

  if (const auto interval = three_unequal_interval(model)) {
    // tau(lambda3) increases monotonically from tau_** to tau^** on
    // (lambda3_lo, turn_low); each orbit meets that sub-interval once.
    const double tau_low = dead_load_two_equal(model, interval->lambda3_lo);
    const double tau_high = dead_load_two_equal(model, interval->lambda3_hi);
    const double tol = 1e-12 * std::max(1.0, tau);
    if (tau > tau_low + tol && tau < tau_high - tol) {
      const double ratio = model.mu1() / model.mu2();
      auto g = [&](double u) {
        const double value =
            model.mu2() / u * (ratio + u * u) * (ratio - 1.0 / u) - tau;
        const double slope = model.mu1() * (u * u * u - ratio * u + 2.0) / (u * u * u);
        return std::pair{value, slope};
      };
      const double lambda3 = detail::solve_bracketed(g, interval->lambda3_lo, interval->turn_low, -1);
      out.push_back(make_equilibrium(model, three_unequal_stretches(model, lambda3),
                                     BranchKind::ThreeUnequal, tau, 6));
    }
  }
  return out;
}

CriticalLoads critical_loads(const MaterialModel& model) {
  CriticalLoads c{2.0 * model.shear_modulus(), {}, {}, {}, {}, {}, {}};
  switch (classify_regime(model)) {
    case Regime::NeoHookean: {
      const double two_two_thirds = std::cbrt(4.0);
      c.tau_star = 3.0 * model.shear_modulus() / two_two_thirds;
      c.lambda_star = 1.0 / two_two_thirds;
      break;
    }
    case Regime::E12: {
      const auto interval = three_unequal_interval(model);
      c.lambda_at_min = interval->lambda3_lo;
      c.tau_min = dead_load_two_equal(model, interval->lambda3_lo);
      c.lambda_at_max = interval->lambda3_hi;
      c.tau_max = dead_load_two_equal(model, interval->lambda3_hi);
      break;
    }
    case Regime::E21: {
      const auto stationary = two_equal_stationary_points(model);
      if (stationary.size() == 2) {
        c.lambda_at_max = stationary[0];
        c.tau_max = dead_load_two_equal(model, stationary[0]);
        c.lambda_at_min = stationary[1];
        c.tau_min = dead_load_two_equal(model, stationary[1]);
      }
      break;
    }
    case Regime::E11:
    case Regime::E22:
    case Regime::Inadmissible:
      break;
  }
  return c;
}

std::vector<BranchPoint> branch_trace(const MaterialModel& model,
                                      std::span<const double> lambda_grid) {
  if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end())) {
    throw std::invalid_argument("branch_trace: lambda grid must be sorted ascending");
  }
  const double bound = two_equal_lower_bound(model);
  std::vector<BranchPoint> out;
  for (double lambda : lambda_grid) {
    if (!(lambda > 0.0) || !(lambda > bound)) continue;
    const BranchKind kind = lambda == 1.0   ? BranchKind::Trivial
                            : lambda > 1.0 ? BranchKind::RodLike
                                           : BranchKind::PlateLike;
    out.push_back({lambda, dead_load_two_equal(model, lambda), kind});
  }
  return out;
}

}  // namespace rivlin
