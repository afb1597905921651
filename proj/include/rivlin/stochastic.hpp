#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rivlin/constitutive.hpp"
#include "rivlin/equilibria.hpp"
#include "rivlin/randvars.hpp"
#include "rivlin/stability.hpp"

namespace rivlin {

/// steps + 1 equally spaced loads from tau_min to tau_max inclusive.
class TauGrid {
 public:
  TauGrid(double tau_min, double tau_max, int steps);

  double tau_min() const { return tau_min_; }
  double tau_max() const { return tau_max_; }
  int steps() const { return steps_; }
  std::size_t size() const { return static_cast<std::size_t>(steps_) + 1; }
  double operator[](std::size_t i) const;

 private:
  double tau_min_;
  double tau_max_;
  int steps_;
};

/// p1: only the trivial state exists; p2: two non-trivial states and an
/// unstable trivial one; p3: trivial plus two non-trivial states.
struct CountProbabilities {
  double tau;
  double p1;
  double p2;
  double p3;
};

enum class SelectionPolicy { PreferReference, LowestPsi };

struct ObservedState {
  double lambda;
  BranchKind branch;
  StabilityClass stability;
};

/// Random material: mu ~ Gamma, and with `ratio` set, R1 ~ Beta mapped to
/// (mu1, mu2) through `shift`. Without `ratio` the material is neo-Hookean.
struct MaterialLaw {
  GammaParams shear;
  std::optional<BetaParams> ratio;
  ShiftMode shift;
};

/// counts[row][bin] over bins [edges[k], edges[k+1]). Trials with no stable
/// state, an observed stretch outside the edges, or an inadmissible sampled
/// material go to the per-row overflow vectors, so every row sums to trials.
struct BifurcationHistogram {
  TauGrid grid;
  std::vector<double> lambda_edges;
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<std::uint64_t> unstable;
  std::vector<std::uint64_t> out_of_range;
  std::vector<std::uint64_t> inadmissible;
  std::uint64_t trials;
  std::uint64_t seed;

  std::uint64_t row_total(std::size_t row) const;
};

/// Neo-Hookean count probabilities at load tau > 0 for mu ~ g.
CountProbabilities count_probs_nh(double tau, const GammaParams& g);

/// Probability that the reference state is stable, 1 - F(tau / 2).
double prob_trivial_stable(double tau, const GammaParams& g);

/// (P(mu2 < mu1/3), P(mu2 > mu1/3)) = (1 - F(3/4), F(3/4)) for R1 ~ b.
std::pair<double, double> prob_secondary_regime(const BetaParams& b);

/// Empirical count fractions from `trials` draws of mu per load.
/// workers == 0 uses the hardware concurrency; results do not depend on it.
std::vector<CountProbabilities> mc_count_probs(const TauGrid& grid, std::uint64_t trials,
                                               const GammaParams& g, std::uint64_t seed,
                                               unsigned workers = 0);

/// State observed for a material at load tau. PreferReference keeps the
/// reference state while it is stable or neutrally stable; otherwise, and
/// always under LowestPsi, the stable candidate of lowest Psi is taken, ties
/// broken by the smaller axis-1 stretch. With no candidate the result is
/// lambda = 1 flagged Unstable.
ObservedState observed_stretch(const MaterialModel& model, double tau, SelectionPolicy policy);

/// Edges (k - 1/2) width for k = 0 .. N + 1 with N = round(lambda_max / width),
/// so every multiple of width up to lambda_max (in particular 1) is a bin centre.
std::vector<double> default_lambda_edges(double width = 0.005, double lambda_max = 5.0);

BifurcationHistogram mc_bifurcation_histogram(const TauGrid& grid, std::uint64_t trials,
                                              const MaterialLaw& law, SelectionPolicy policy,
                                              std::uint64_t seed,
                                              std::vector<double> lambda_edges,
                                              unsigned workers = 0);

struct MaterialDraw {
  double mu;
  std::optional<double> r1;
  Coefficients coeffs;
};

/// Material of trial `index` in row `row`; the histogram uses exactly these draws.
MaterialDraw draw_material(const MaterialLaw& law, std::uint64_t seed, std::uint32_t index,
                           std::uint32_t row = 0);

}  // namespace rivlin
