#include <cmath>

#include <gtest/gtest.h>

#include "rivlin/errors.hpp"
#include "rivlin/stochastic.hpp"

using namespace rivlin;

namespace {

// High-precision references at tau = 1.04, Gamma(400, 0.0013); see
// tests/oracles/compute_expected.py.
constexpr double kP1 = 0.12301603475650639;
constexpr double kP2 = 0.50664912983890547;
constexpr double kP3 = 0.37033483540458814;
constexpr double kP0 = 0.49335087016109453;
constexpr double kBetaCdfThreeQuarters = 0.0038282631001857953;

const GammaParams kNhGamma(400, 0.0013);

std::size_t bin_of(const BifurcationHistogram& h, double lambda) {
  for (std::size_t k = 0; k + 1 < h.lambda_edges.size(); ++k) {
    if (lambda >= h.lambda_edges[k] && lambda < h.lambda_edges[k + 1]) return k;
  }
  return h.lambda_edges.size();
}

}  // namespace

TEST(TauGrid, InclusiveEndpoints) {
  const TauGrid g(0.8, 1.2, 100);
  EXPECT_EQ(g.size(), 101u);
  EXPECT_EQ(g[0], 0.8);
  EXPECT_EQ(g[100], 1.2);
  EXPECT_NEAR(g[60], 1.04, 1e-15);
  EXPECT_THROW(TauGrid(1.0, 1.0, 5), std::invalid_argument);
  EXPECT_THROW(TauGrid(0.0, 1.0, 0), std::invalid_argument);
}

TEST(CountProbs, Reference) {
  const auto p = count_probs_nh(1.04, kNhGamma);
  EXPECT_NEAR(p.p1, kP1, 1e-13);
  EXPECT_NEAR(p.p2, kP2, 1e-13);
  EXPECT_NEAR(p.p3, kP3, 1e-13);
  EXPECT_NEAR(p.p1 + p.p2 + p.p3, 1.0, 1e-12);
  EXPECT_NEAR(p.p1, 0.10, 0.05);
  EXPECT_NEAR(p.p2, 0.50, 0.05);
  EXPECT_NEAR(p.p3, 0.40, 0.05);
}

TEST(CountProbs, SmallLoadAndErrors) {
  const auto p = count_probs_nh(1e-6, kNhGamma);
  EXPECT_EQ(p.p1, 1.0);
  EXPECT_EQ(p.p2, 0.0);
  EXPECT_EQ(p.p3, 0.0);
  EXPECT_THROW(count_probs_nh(0.0, kNhGamma), DomainError);
  EXPECT_THROW(prob_trivial_stable(-1.0, kNhGamma), DomainError);
}

TEST(CountProbs, Monotone) {
  double p1 = 2.0, p2 = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const auto p = count_probs_nh(0.7 + 0.003 * i, kNhGamma);
    EXPECT_LE(p.p1, p1);
    EXPECT_GE(p.p2, p2);
    EXPECT_NEAR(p.p1 + p.p2 + p.p3, 1.0, 1e-12);
    p1 = p.p1;
    p2 = p.p2;
  }
}

TEST(TrivialStable, Examples) {
  EXPECT_EQ(prob_trivial_stable(1e-6, kNhGamma), 1.0);
  EXPECT_NEAR(prob_trivial_stable(1.04, kNhGamma), kP0, 1e-13);
  for (auto [a, t] : {std::pair{400.0, 0.0013}, {5.0, 1.0}, {721.0, 0.01}}) {
    const GammaParams g(a, t);
    const double p0 = prob_trivial_stable(2 * g.mean(), g);
    EXPECT_LT(p0, 0.5);
    EXPECT_GT(p0, 0.4);
  }
}

TEST(SecondaryRegime, Examples) {
  const auto [lt, gt] = prob_secondary_regime({1, 1});
  EXPECT_NEAR(lt, 0.25, 1e-15);
  EXPECT_NEAR(gt, 0.75, 1e-15);
  const auto [a, b] = prob_secondary_regime({400, 100});
  EXPECT_NEAR(b, kBetaCdfThreeQuarters, 1e-14);
  EXPECT_NEAR(a + b, 1.0, 1e-15);
}

TEST(McCountProbs, DeterministicAndWorkerIndependent) {
  const TauGrid grid(0.9, 1.1, 4);
  const auto a = mc_count_probs(grid, 2000, kNhGamma, 9, 1);
  const auto b = mc_count_probs(grid, 2000, kNhGamma, 9, 3);
  const auto c = mc_count_probs(grid, 2000, kNhGamma, 10, 1);
  ASSERT_EQ(a.size(), 5u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].p1, b[i].p1);
    EXPECT_EQ(a[i].p2, b[i].p2);
    EXPECT_EQ(a[i].p3, b[i].p3);
    EXPECT_DOUBLE_EQ(a[i].p1 + a[i].p2 + a[i].p3, 1.0);
    differs |= a[i].p2 != c[i].p2;
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(mc_count_probs(grid, 0, kNhGamma, 1), std::invalid_argument);
}

TEST(McCountProbs, LargeSampleConverges) {
  const auto p = mc_count_probs(TauGrid(1.04, 1.08, 1), 1000000, kNhGamma, 3, 0);
  const auto exact = count_probs_nh(p[0].tau, kNhGamma);
  EXPECT_NEAR(p[0].p1, exact.p1, 0.005);
  EXPECT_NEAR(p[0].p2, exact.p2, 0.005);
  EXPECT_NEAR(p[0].p3, exact.p3, 0.005);
}

TEST(ObservedStretch, Examples) {
  const auto ref = observed_stretch(MaterialModel(0.6, 0.0), 1.04, SelectionPolicy::PreferReference);
  EXPECT_EQ(ref.lambda, 1.0);
  EXPECT_EQ(ref.branch, BranchKind::Trivial);

  const auto plate =
      observed_stretch(MaterialModel(0.52, 0.0), 1.04 * (1 + 1e-6), SelectionPolicy::PreferReference);
  EXPECT_NEAR(plate.lambda, (3 - std::sqrt(5.0)) / 2, 1e-5);
  EXPECT_EQ(plate.branch, BranchKind::PlateLike);
  EXPECT_EQ(plate.stability, StabilityClass::NeutrallyStable);

  const MaterialModel e22(1.0, -0.1);
  const auto none = observed_stretch(e22, 2.0 * e22.shear_modulus() * 1.5, SelectionPolicy::PreferReference);
  EXPECT_EQ(none.lambda, 1.0);
  EXPECT_EQ(none.stability, StabilityClass::Unstable);
}

TEST(ObservedStretch, PoliciesDifferWhenPlateIsLowerEnergy) {
  // Between tau_star and tau0 the reference state is stable but a plate state
  // of lower total energy can exist.
  const MaterialModel m(1.0, 0.0);
  const double tau = 1.99;
  const auto pref = observed_stretch(m, tau, SelectionPolicy::PreferReference);
  const auto low = observed_stretch(m, tau, SelectionPolicy::LowestPsi);
  EXPECT_EQ(pref.branch, BranchKind::Trivial);
  EXPECT_EQ(low.branch, BranchKind::PlateLike);
  EXPECT_LT(low.lambda, 1.0);
}

TEST(ObservedStretch, E12PrefersThreeUnequalWhenOnlyStableState) {
  const MaterialModel m(1.92, 0.48);
  const auto s = observed_stretch(m, 7.5, SelectionPolicy::PreferReference);
  EXPECT_EQ(s.branch, BranchKind::ThreeUnequal);
  EXPECT_EQ(s.stability, StabilityClass::NeutrallyStable);
}

TEST(DefaultEdges, ReferenceIsBinCentre) {
  const auto e = default_lambda_edges();
  EXPECT_EQ(e.size(), 1002u);
  EXPECT_DOUBLE_EQ(e.front(), -0.0025);
  EXPECT_NEAR(e.back(), 5.0025, 1e-12);
  std::size_t k = 0;
  while (!(e[k] <= 1.0 && 1.0 < e[k + 1])) ++k;
  EXPECT_NEAR(0.5 * (e[k] + e[k + 1]), 1.0, 1e-12);
  EXPECT_GT(1.0 - e[k], 0.002);
  EXPECT_GT(e[k + 1] - 1.0, 0.002);
  EXPECT_THROW(default_lambda_edges(0.0, 5.0), std::invalid_argument);
}

TEST(Histogram, RowsSumToTrials) {
  const MaterialLaw law{kNhGamma, std::nullopt, ShiftMode::zero()};
  const TauGrid grid(0.9, 1.2, 6);
  const auto h = mc_bifurcation_histogram(grid, 500, law, SelectionPolicy::PreferReference, 4,
                                          default_lambda_edges());
  for (std::size_t r = 0; r < grid.size(); ++r) EXPECT_EQ(h.row_total(r), 500u);
  const auto one = mc_bifurcation_histogram(grid, 1, law, SelectionPolicy::PreferReference, 4,
                                            default_lambda_edges());
  for (std::size_t r = 0; r < grid.size(); ++r) EXPECT_EQ(one.row_total(r), 1u);
}

TEST(Histogram, WorkerCountDoesNotChangeCounts) {
  const MaterialLaw law{GammaParams(240, 0.01), BetaParams(400, 100), ShiftMode::zero()};
  const TauGrid grid(4.0, 9.0, 5);
  const auto a = mc_bifurcation_histogram(grid, 300, law, SelectionPolicy::PreferReference, 12,
                                          default_lambda_edges(), 1);
  const auto b = mc_bifurcation_histogram(grid, 300, law, SelectionPolicy::PreferReference, 12,
                                          default_lambda_edges(), 4);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.unstable, b.unstable);
  EXPECT_EQ(a.out_of_range, b.out_of_range);
  EXPECT_EQ(a.inadmissible, b.inadmissible);
}

TEST(Histogram, NeoHookeanReferenceBinMatchesShearDraws) {
  // Same shear-modulus streams as mc_count_probs: the reference state is
  // observed exactly when mu > tau/2, i.e. outside count 2.
  const MaterialLaw law{kNhGamma, std::nullopt, ShiftMode::zero()};
  const TauGrid grid(0.95, 1.1, 3);
  const std::uint64_t trials = 3000;
  const auto h = mc_bifurcation_histogram(grid, trials, law, SelectionPolicy::PreferReference, 21,
                                          default_lambda_edges(), 2);
  const auto p = mc_count_probs(grid, trials, kNhGamma, 21, 1);
  for (std::size_t r = 0; r < grid.size(); ++r) {
    const auto ref = h.counts[r][bin_of(h, 1.0)];
    EXPECT_EQ(ref, trials - static_cast<std::uint64_t>(std::llround(p[r].p2 * trials)));
    EXPECT_EQ(h.unstable[r], 0u);
  }
}

TEST(Histogram, InadmissibleDrawsAreCounted) {
  // A large explicit shift makes mu1 negative for small R1.
  const MaterialLaw law{GammaParams(100, 0.01), BetaParams(1, 1), ShiftMode::explicit_shift(2.0)};
  const auto h = mc_bifurcation_histogram(TauGrid(0.5, 1.0, 1), 400, law,
                                          SelectionPolicy::PreferReference, 3, default_lambda_edges());
  EXPECT_GT(h.inadmissible[0], 0u);
  EXPECT_EQ(h.row_total(0), 400u);
}

TEST(Histogram, OutOfRangeCounted) {
  const MaterialLaw law{kNhGamma, std::nullopt, ShiftMode::zero()};
  const auto h = mc_bifurcation_histogram(TauGrid(1.3, 1.4, 1), 200, law,
                                          SelectionPolicy::PreferReference, 3, {0.3, 0.9});
  EXPECT_EQ(h.row_total(0), 200u);
  EXPECT_GT(h.out_of_range[0], 0u);
  EXPECT_THROW(mc_bifurcation_histogram(TauGrid(1.3, 1.4, 1), 10, law,
                                        SelectionPolicy::PreferReference, 3, {0.5, 0.2}),
               std::invalid_argument);
}
