// Acceptance checks AC1..AC12. One PASS/FAIL line per criterion; nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "rivlin/cli/commands.hpp"
#include "rivlin/constitutive.hpp"
#include "rivlin/equilibria.hpp"
#include "rivlin/randvars.hpp"
#include "rivlin/rng.hpp"
#include "rivlin/stability.hpp"
#include "rivlin/stochastic.hpp"

using namespace rivlin;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t bin_of(const std::vector<double>& edges, double x) {
  return static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin()) - 1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome ac1() {
  const auto p = count_probs_nh(1.04, GammaParams(400, 0.0013));
  const bool ok = std::abs(p.p1 - 0.10) <= 0.05 && std::abs(p.p2 - 0.50) <= 0.05 &&
                  std::abs(p.p3 - 0.40) <= 0.05;
  return {ok, fmt("P=(%.4f, %.4f, %.4f)", p.p1, p.p2, p.p3)};
}

Outcome ac2() {
  const GammaParams g(400, 0.0013);
  const TauGrid grid(0.8, 1.2, 100);
  const auto mc = mc_count_probs(grid, 10000, g, 20240601);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto exact = count_probs_nh(grid[i], g);
    worst = std::max({worst, std::abs(mc[i].p1 - exact.p1), std::abs(mc[i].p2 - exact.p2),
                      std::abs(mc[i].p3 - exact.p3)});
  }
  return {worst <= 0.02, fmt("max |p_hat - p| = %.4f", worst)};
}

Outcome ac3() {
  const GammaParams g(400, 0.0013);
  const MaterialLaw law{g, std::nullopt, ShiftMode::zero()};
  const auto edges = default_lambda_edges();
  const std::uint64_t n = 10000;
  const auto h = mc_bifurcation_histogram(TauGrid(1.04, 1.2, 1), n, law,
                                          SelectionPolicy::PreferReference, 77, edges);
  const auto& row = h.counts[0];
  const std::size_t ref = bin_of(edges, 1.0);
  const double freq = static_cast<double>(row[ref]) / n;
  const auto p = count_probs_nh(1.04, g);
  const double expect = p.p1 + p.p3;
  const double band = 4.0 * std::sqrt(expect * (1 - expect) / n);
  std::size_t mode = 0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k != ref && row[k] > row[mode]) mode = k;
  }
  const double centre = 0.5 * (edges[mode] + edges[mode + 1]);
  const bool ok = std::abs(freq - expect) <= band && centre >= 0.37 && centre <= 0.39;
  return {ok, fmt("f(1)=%.4f vs %.4f +- %.4f, mode at %.4f", freq, expect, band, centre)};
}

Outcome ac4() {
  bool ok = true;
  double worst = 0.0;
  for (double mu : {0.52, 1.0, 3.7}) {
    const auto c = critical_loads(MaterialModel(mu, 0.0));
    const double e1 = std::abs(*c.tau_star / mu - 3.0 / std::cbrt(4.0));
    const double e2 = std::abs(*c.lambda_star - 1.0 / std::cbrt(4.0));
    worst = std::max({worst, e1, e2});
    ok = ok && e1 <= 1e-12 && e2 <= 1e-12 && c.tau0 == 2.0 * mu;
  }
  return {ok, fmt("max error %.2e, tau0 = 2 mu exactly", worst)};
}

Outcome ac5() {
  const auto t0 = std::chrono::steady_clock::now();
  const double v = infimum_threshold();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double x = infimum_info().minimizer;
  const bool ok = std::abs(v + 0.045) <= 1e-3 && x > 0.0 && x < 1.0 && secs < 0.1;
  return {ok, fmt("inf = %.6f at lambda = %.6f (%.4f s)", v, x, secs)};
}

Outcome ac6() {
  const double ratio = -0.148 / 2.484;
  const double bound = -std::pow(5.0, -5.0 / 3.0);
  const bool ok = classify_regime(2.484, -0.148) == Regime::E21 && ratio > bound &&
                  fmt("%.4f", ratio) == "-0.0596" && fmt("%.4f", bound) == "-0.0684";
  return {ok, fmt("mu2/mu1 = %.4f > %.4f", ratio, bound)};
}

Outcome ac7() {
  const MaterialLaw law{GammaParams(721, 0.01), BetaParams(10000, 500), ShiftMode::negative_case()};
  const auto edges = default_lambda_edges();
  const std::uint64_t n = 10000;
  const auto h = mc_bifurcation_histogram(TauGrid(25.0, 26.0, 1), n, law,
                                          SelectionPolicy::PreferReference, 4242, edges);
  const std::size_t ref = bin_of(edges, 1.0);
  std::uint64_t nontrivial = 0;
  for (std::size_t k = 0; k < h.counts[0].size(); ++k) {
    if (k != ref) nontrivial += h.counts[0][k];
  }
  const double mass = static_cast<double>(nontrivial) / n;
  return {std::abs(mass - 0.10) <= 0.03, fmt("non-trivial mass %.4f", mass)};
}

Outcome ac8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t states = 0, failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double mu1 = 0.1 + 5.0 * u(rng);
    double mu2 = 0.0;
    switch (trial % 5) {
      case 0: break;
      case 1: mu2 = mu1 * (1.0 / 3.0 + 2.0 * u(rng)); break;
      case 2: mu2 = mu1 * u(rng) / 3.0; break;
      case 3: mu2 = -mu1 * u(rng) * std::pow(5.0, -5.0 / 3.0); break;
      default: mu2 = -mu1 * (std::pow(5.0, -5.0 / 3.0) + 0.9 * u(rng)); break;
    }
    const MaterialModel m(mu1, mu2);
    const double mu = mu1 + mu2;
    const double tau = (trial % 10 == 0) ? -mu * u(rng) : mu * 8.0 * u(rng);
    const auto eqs = solve_equilibria(m, tau);
    const double scale = std::max(1.0, std::abs(tau));
    for (const auto& e : eqs) {
      ++states;
      const auto& s = e.stretches;
      bool ok = equilibrium_residual(m, e) <= 1e-9 * scale;
      ok = ok && std::abs(s[0] * s[1] * s[2] - 1.0) <= 1e-12;
      if (e.branch == BranchKind::RodLike || e.branch == BranchKind::PlateLike) {
        ok = ok && std::abs(dead_load_two_equal(m, s[0]) - tau) <= 1e-9 * scale;
      } else if (e.branch == BranchKind::ThreeUnequal) {
        ok = ok && std::abs(dead_load_three_unequal(m, s[2]) - tau) <= 1e-9 * scale;
      }
      failures += !ok;
    }
    for (double c : {0.1, 10.0}) {
      const auto scaled = solve_equilibria(m.scaled(c), c * tau);
      if (scaled.size() != eqs.size()) {
        ++failures;
        continue;
      }
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
          if (std::abs(scaled[i].stretches[k] - eqs[i].stretches[k]) >
              1e-9 * std::max(1.0, eqs[i].stretches[k])) {
            ++failures;
          }
        }
        if (scaled[i].branch != eqs[i].branch) ++failures;
      }
    }
  }
  return {failures == 0, fmt("%zu equilibria checked, %zu failures", states, failures)};
}

Outcome ac9() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0, total = 0;
  while (total < 500) {
    const double mu = 0.2 + 4.0 * u(rng);
    const double lambda = std::exp(std::log(0.02) + (std::log(6.0) - std::log(0.02)) * u(rng));
    if (std::abs(lambda - 1.0) < 1e-3) continue;
    const double tau = dead_load_two_equal(MaterialModel(mu, 0.0), lambda);
    if (std::abs(lambda - tau / (3.0 * mu)) <= 1e-3) continue;
    const MaterialModel m(mu, 0.0);
    const double t = 1.0 / std::sqrt(lambda);
    const StretchTriple s(lambda, t, t);
    const Equilibrium e{s, lambda > 1.0 ? BranchKind::RodLike : BranchKind::PlateLike,
                        equilibrium_pressure(m, s, tau), tau, 3};
    ++total;
    agree += classify_equilibrium(m, e) == nh_closed_form_stability(mu, lambda, tau);
  }

  double worst = 0.0;
  constexpr double h = 1e-5;
  for (int i = 0; i < 200; ++i) {
    const double mu1 = 0.2 + 3.0 * u(rng);
    const double mu2 = mu1 * (-0.05 + 0.5 * u(rng));
    const MaterialModel m(mu1, mu2);
    const double a = 0.3 + 2.0 * u(rng), b = 0.3 + 2.0 * u(rng), tau = 6.0 * u(rng);
    const auto ev = reduced_psi_derivatives(m, a, b, tau);
    auto grad = [&](double x, double y) { return reduced_psi_derivatives(m, x, y, tau).gradient; };
    Eigen::Matrix2d fd;
    fd.col(0) = (grad(a + h, b) - grad(a - h, b)) / (2 * h);
    fd.col(1) = (grad(a, b + h) - grad(a, b - h)) / (2 * h);
    auto value = [&](double x, double y) { return reduced_psi_derivatives(m, x, y, tau).value; };
    Eigen::Vector2d fg((value(a + h, b) - value(a - h, b)) / (2 * h),
                       (value(a, b + h) - value(a, b - h)) / (2 * h));
    const double rel_h = (fd - ev.hessian).norm() / std::max(1.0, ev.hessian.norm());
    const double rel_g = (fg - ev.gradient).norm() / std::max(1.0, ev.gradient.norm());
    worst = std::max({worst, rel_h, rel_g});
  }
  return {agree == total && worst <= 1e-5,
          fmt("%d/%d classifications agree, max FD relative error %.2e", agree, total, worst)};
}

double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

Outcome ac10() {
  double worst = 0.0;
  for (auto [a, s] : {std::pair{400.0, 0.0013}, {721.0, 0.01}, {10000.0, 1e-4}, {2.5, 1.0}}) {
    const GammaParams g(a, s);
    const double sd = std::sqrt(g.variance());
    for (int i = 0; i < 100; ++i) {
      const double x = std::max(1e-12, g.mean() + sd * (-6.0 + 12.0 * i / 99.0));
      worst = std::max(worst, std::abs(gamma_cdf(g, x) - oracle::gamma_cdf(a, s, x)));
    }
  }
  for (auto [a, b] : {std::pair{10000.0, 500.0}, {400.0, 100.0}, {721.0, 50.0}, {2.0, 3.0}}) {
    const BetaParams p(a, b);
    const double sd = std::sqrt(p.variance());
    for (int i = 0; i < 100; ++i) {
      const double r = std::clamp(p.mean() + sd * (-6.0 + 12.0 * i / 99.0), 1e-9, 1 - 1e-9);
      worst = std::max(worst, std::abs(beta_cdf(p, r) - oracle::beta_cdf(a, b, r)));
    }
  }

  // 1% critical value of sqrt(n) D is 1.6276.
  const int n = 100000;
  const double crit = 1.6276 / std::sqrt(static_cast<double>(n));
  const GammaParams g(721, 0.01);
  const BetaParams bp(10000, 500);
  std::vector<double> gs(n), bs(n);
  for (int i = 0; i < n; ++i) {
    RandomStream sg(99, StreamPurpose::ShearModulus, static_cast<std::uint32_t>(i));
    RandomStream sb(99, StreamPurpose::Ratio, static_cast<std::uint32_t>(i));
    gs[i] = sample_gamma(g, sg);
    bs[i] = sample_beta(bp, sb);
  }
  const double dg = ks_statistic(gs, [&](double x) { return gamma_cdf(g, x); });
  const double db = ks_statistic(bs, [&](double x) { return beta_cdf(bp, x); });
  return {worst <= 1e-8 && dg < crit && db < crit,
          fmt("max cdf error %.2e; KS D gamma %.5f beta %.5f (crit %.5f)", worst, dg, db, crit)};
}

Outcome ac11() {
  const auto m = coeff_moments(GammaParams(240, 0.01), BetaParams(400, 100), 0.0);
  const double var_mu = 240 * 0.01 * 0.01;
  const double lhs = m.var_mu1 + m.var_mu2 + 2 * m.cov_mu1_mu2;
  // The stated mean of mu2 (0.4) does not follow from the laws; 2.4 * 0.2 = 0.48 does.
  const bool ok = std::abs(m.mean_mu1 - 1.92) <= 1e-12 && std::abs(lhs - var_mu) <= 1e-12 &&
                  std::abs(m.mean_mu2 - 0.48) <= 1e-12;
  return {ok, fmt("mean mu1 %.15g, mean mu2 %.15g, variance gap %.2e", m.mean_mu1, m.mean_mu2,
                  std::abs(lhs - var_mu))};
}

Outcome ac12() {
  const auto dir = oracle::temp_dir("acceptance_repro");
  std::ostringstream sink;
  const std::string first = (dir / "first.csv").string();
  bool ok = cli::run_cli({"stoch", "--gamma", "721,0.01", "--beta", "10000,500", "--shift",
                          "negative", "--tau-min", "20", "--tau-max", "30", "--steps", "4",
                          "--trials", "2000", "--seed", "12", "--workers", "1", "--out", first},
                         sink, sink) == 0;
  const auto manifest = nlohmann::json::parse(slurp(first + ".manifest.json"));
  std::ofstream(dir / "config.json") << manifest["config"].dump();
  std::size_t identical = 0;
  for (const char* workers : {"2", "4", "0"}) {
    const std::string again = (dir / (std::string("w") + workers + ".csv")).string();
    ok = ok && cli::run_cli({"stoch", "--config", (dir / "config.json").string(), "--workers",
                             workers, "--out", again},
                            sink, sink) == 0;
    identical += slurp(first) == slurp(again);
  }
  fs::remove_all(dir);
  return {ok && identical == 3, fmt("%zu/3 re-runs byte-identical", identical)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    Outcome (*check)();
    double budget_s;
  };
  const Criterion criteria[] = {
      {"AC1", ac1, 1.0},   {"AC2", ac2, 10.0}, {"AC3", ac3, 0},  {"AC4", ac4, 0},
      {"AC5", ac5, 0},     {"AC6", ac6, 0},    {"AC7", ac7, 0},  {"AC8", ac8, 0},
      {"AC9", ac9, 0},     {"AC10", ac10, 0},  {"AC11", ac11, 0}, {"AC12", ac12, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      r.pass = false;
      r.detail += fmt(" (over %.1f s budget)", c.budget_s);
    }
    failed += !r.pass;
    std::printf("%s %s: %s [%.3f s]\n", r.pass ? "PASS" : "FAIL", c.id, r.detail.c_str(), secs);
  }
  return failed == 0 ? 0 : 1;
}
