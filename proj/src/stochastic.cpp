#include "rivlin/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <array>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rivlin/errors.hpp"

namespace rivlin {
namespace {

// 2^(2/3) / 3: mu above this multiple of tau means tau < tau_star.
const double kStarFactor = std::cbrt(4.0) / 3.0;

unsigned resolve_workers(unsigned workers, std::uint64_t total) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(total, 1)));
}

// Runs body(begin, end, worker) over contiguous chunks of [0, total).
template <class Body>
void parallel_chunks(std::uint64_t total, unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(std::uint64_t{0}, total, 0u);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t chunk = total / workers;
  const std::uint64_t extra = total % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool acceptable(StabilityClass c) {
  return c == StabilityClass::Stable || c == StabilityClass::NeutrallyStable;
}

}  // namespace

TauGrid::TauGrid(double tau_min, double tau_max, int steps)
    : tau_min_(tau_min), tau_max_(tau_max), steps_(steps) {
  if (!std::isfinite(tau_min) || !std::isfinite(tau_max) || !(tau_min < tau_max)) {
    throw std::invalid_argument("tau grid requires finite tau_min < tau_max");
  }
  if (steps < 1) throw std::invalid_argument("tau grid requires steps >= 1");
}

double TauGrid::operator[](std::size_t i) const {
  if (i == static_cast<std::size_t>(steps_)) return tau_max_;
  return tau_min_ + (tau_max_ - tau_min_) * static_cast<double>(i) / steps_;
}

std::uint64_t BifurcationHistogram::row_total(std::size_t row) const {
  std::uint64_t total = unstable[row] + out_of_range[row] + inadmissible[row];
  for (auto c : counts[row]) total += c;
  return total;
}

CountProbabilities count_probs_nh(double tau, const GammaParams& g) {
  if (!(tau > 0.0)) throw DomainError("count probabilities require tau > 0");
  const double f_star = gamma_cdf(g, kStarFactor * tau);
  const double f_zero = gamma_cdf(g, 0.5 * tau);
  return {tau, 1.0 - f_star, f_zero, f_star - f_zero};
}

double prob_trivial_stable(double tau, const GammaParams& g) {
  if (!(tau > 0.0)) throw DomainError("prob_trivial_stable requires tau > 0");
  return 1.0 - gamma_cdf(g, 0.5 * tau);
}

std::pair<double, double> prob_secondary_regime(const BetaParams& b) {
  const double below = beta_cdf(b, 0.75);
  return {1.0 - below, below};
}

std::vector<CountProbabilities> mc_count_probs(const TauGrid& grid, std::uint64_t trials,
                                               const GammaParams& g, std::uint64_t seed,
                                               unsigned workers) {
  if (trials < 1) throw std::invalid_argument("mc_count_probs requires trials >= 1");
  const std::size_t rows = grid.size();
  const std::uint64_t total = rows * trials;
  const unsigned w = resolve_workers(workers, total);
  using Tally = std::vector<std::array<std::uint64_t, 3>>;
  std::vector<Tally> tallies(w, Tally(rows, {0, 0, 0}));

  parallel_chunks(total, w, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
    Tally& tally = tallies[worker];
    for (std::uint64_t k = begin; k < end; ++k) {
      const auto row = static_cast<std::uint32_t>(k / trials);
      const auto index = static_cast<std::uint32_t>(k % trials);
      RandomStream stream(seed, StreamPurpose::ShearModulus, index, row);
      const double mu = sample_gamma(g, stream);
      const double tau = grid[row];
      if (mu > kStarFactor * tau) {
        ++tally[row][0];
      } else if (mu < 0.5 * tau) {
        ++tally[row][1];
      } else {
        ++tally[row][2];
      }
    }
  });

  std::vector<CountProbabilities> out;
  out.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::array<std::uint64_t, 3> sum{0, 0, 0};
    for (const auto& t : tallies) {
      for (int i = 0; i < 3; ++i) sum[i] += t[r][i];
    }
    const double n = static_cast<double>(trials);
    out.push_back({grid[r], sum[0] / n, sum[1] / n, sum[2] / n});
  }
  return out;
}

ObservedState observed_stretch(const MaterialModel& model, double tau, SelectionPolicy policy) {
  const Equilibrium trivial{StretchTriple::identity(), BranchKind::Trivial,
                            equilibrium_pressure(model, StretchTriple::identity(), tau), tau, 1};
  const StabilityClass trivial_class = classify_equilibrium(model, trivial);
  if (policy == SelectionPolicy::PreferReference && acceptable(trivial_class)) {
    return {1.0, BranchKind::Trivial, trivial_class};
  }

  std::optional<ObservedState> best;
  double best_psi = std::numeric_limits<double>::infinity();
  for (const Equilibrium& eq : solve_equilibria(model, tau)) {
    if (eq.branch == BranchKind::Trivial && policy == SelectionPolicy::PreferReference) continue;
    const StabilityClass c =
        eq.branch == BranchKind::Trivial ? trivial_class : classify_equilibrium(model, eq);
    if (!acceptable(c)) continue;
    const double psi = psi_value(model, eq.stretches, tau);
    const double lambda = eq.stretches[0];
    const double tie = 1e-12 * std::max(1.0, std::abs(psi));
    const bool better = !best || psi < best_psi - tie ||
                        (std::abs(psi - best_psi) <= tie && lambda < best->lambda);
    if (better) {
      best = ObservedState{lambda, eq.branch, c};
      best_psi = psi;
    }
  }
  if (best) return *best;
  return {1.0, BranchKind::Trivial, StabilityClass::Unstable};
}

std::vector<double> default_lambda_edges(double width, double lambda_max) {
  if (!(width > 0.0) || !(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw std::invalid_argument("lambda bins require width > 0 and lambda_max > 0");
  }
  const auto n = static_cast<long>(std::lround(lambda_max / width));
  if (n < 1) throw std::invalid_argument("lambda_max must be at least one bin width");
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n + 1; ++k) edges.push_back((static_cast<double>(k) - 0.5) * width);
  return edges;
}

MaterialDraw draw_material(const MaterialLaw& law, std::uint64_t seed, std::uint32_t index,
                           std::uint32_t row) {
  RandomStream mu_stream(seed, StreamPurpose::ShearModulus, index, row);
  const double mu = sample_gamma(law.shear, mu_stream);
  if (!law.ratio) return {mu, std::nullopt, {mu, 0.0}};
  RandomStream r_stream(seed, StreamPurpose::Ratio, index, row);
  const double r1 = sample_beta(*law.ratio, r_stream);
  return {mu, r1, coeffs_from(mu, r1, law.shift)};
}

BifurcationHistogram mc_bifurcation_histogram(const TauGrid& grid, std::uint64_t trials,
                                              const MaterialLaw& law, SelectionPolicy policy,
                                              std::uint64_t seed,
                                              std::vector<double> lambda_edges,
                                              unsigned workers) {
  if (trials < 1) throw std::invalid_argument("histogram requires trials >= 1");
  if (lambda_edges.size() < 2 || !std::is_sorted(lambda_edges.begin(), lambda_edges.end()) ||
      std::adjacent_find(lambda_edges.begin(), lambda_edges.end()) != lambda_edges.end()) {
    throw std::invalid_argument("lambda edges must be strictly increasing with at least two entries");
  }
  const std::size_t rows = grid.size();
  const std::size_t bins = lambda_edges.size() - 1;

  struct Partial {
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::uint64_t> unstable, out_of_range, inadmissible;
  };
  const std::uint64_t total = rows * trials;
  const unsigned w = resolve_workers(workers, total);
  std::vector<Partial> partials(
      w, Partial{std::vector<std::vector<std::uint64_t>>(rows, std::vector<std::uint64_t>(bins, 0)),
                 std::vector<std::uint64_t>(rows, 0), std::vector<std::uint64_t>(rows, 0),
                 std::vector<std::uint64_t>(rows, 0)});

  parallel_chunks(total, w, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
    Partial& part = partials[worker];
    for (std::uint64_t k = begin; k < end; ++k) {
      const auto row = static_cast<std::uint32_t>(k / trials);
      const auto index = static_cast<std::uint32_t>(k % trials);
      const MaterialDraw draw = draw_material(law, seed, index, row);
      if (classify_regime(draw.coeffs.mu1, draw.coeffs.mu2) == Regime::Inadmissible) {
        ++part.inadmissible[row];
        continue;
      }
      const MaterialModel model(draw.coeffs.mu1, draw.coeffs.mu2);
      const ObservedState state = observed_stretch(model, grid[row], policy);
      if (!acceptable(state.stability)) {
        ++part.unstable[row];
        continue;
      }
      const auto it = std::upper_bound(lambda_edges.begin(), lambda_edges.end(), state.lambda);
      if (it == lambda_edges.begin() || it == lambda_edges.end()) {
        ++part.out_of_range[row];
        continue;
      }
      ++part.counts[row][static_cast<std::size_t>(it - lambda_edges.begin()) - 1];
    }
  });

  BifurcationHistogram h{grid,
                         std::move(lambda_edges),
                         std::vector<std::vector<std::uint64_t>>(rows, std::vector<std::uint64_t>(bins, 0)),
                         std::vector<std::uint64_t>(rows, 0),
                         std::vector<std::uint64_t>(rows, 0),
                         std::vector<std::uint64_t>(rows, 0),
                         trials,
                         seed};
  for (const Partial& part : partials) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t b = 0; b < bins; ++b) h.counts[r][b] += part.counts[r][b];
      h.unstable[r] += part.unstable[r];
      h.out_of_range[r] += part.out_of_range[r];
      h.inadmissible[r] += part.inadmissible[r];
    }
  }
  return h;
}

}  // namespace rivlin
