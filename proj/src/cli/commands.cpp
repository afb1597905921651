#include "rivlin/cli/commands.hpp"

#include <chrono>
#include <filesystem>
#include <system_error>
#include <iostream>

#include "rivlin/constitutive.hpp"
#include "rivlin/equilibria.hpp"
#include "rivlin/randvars.hpp"
#include "rivlin/stability.hpp"
#include "rivlin/stochastic.hpp"

#ifndef RIVLIN_VERSION
#define RIVLIN_VERSION "0.0.0"
#endif

namespace rivlin::cli {
namespace {

std::string str(std::string_view s) { return std::string(s); }

TauGrid grid_of(const RunConfig& c) { return TauGrid(c.tau_min, *c.tau_max, c.steps); }

GammaParams gamma_of(const RunConfig& c) { return {c.gamma->first, c.gamma->second}; }

ShiftMode shift_of(const RunConfig& c) {
  if (c.shift == "zero") return ShiftMode::zero();
  if (c.shift == "negative") return ShiftMode::negative_case();
  return ShiftMode::explicit_shift(std::stod(c.shift));
}

MaterialLaw law_of(const RunConfig& c) {
  MaterialLaw law{gamma_of(c), std::nullopt, shift_of(c)};
  if (c.beta) law.ratio = BetaParams(c.beta->first, c.beta->second);
  return law;
}

bool uses_seed(Command c) {
  return c == Command::Stoch || c == Command::Sample || c == Command::Probs;
}

}  // namespace

Table run_diagram(const RunConfig& c) {
  const MaterialModel model(*c.mu1, *c.mu2);
  const TauGrid grid = grid_of(c);
  Table t{{"tau", "branch", "lambda1", "lambda2", "lambda3", "pressure", "stability",
           "multiplicity"},
          {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tau = grid[i];
    for (const Equilibrium& eq : solve_equilibria(model, tau)) {
      t.rows.push_back({tau, str(to_string(eq.branch)), eq.stretches[0], eq.stretches[1],
                        eq.stretches[2], eq.pressure,
                        str(to_string(classify_equilibrium(model, eq))),
                        std::int64_t{eq.multiplicity}});
    }
  }
  return t;
}

Table run_probs(const RunConfig& c) {
  const TauGrid grid = grid_of(c);
  const GammaParams g = gamma_of(c);
  const bool trivial = c.kind == "trivial";
  Table t;
  t.columns = trivial ? std::vector<std::string>{"tau", "P0"}
                      : std::vector<std::string>{"tau", "P1", "P2", "P3"};
  std::vector<CountProbabilities> probs;
  if (c.mc) {
    probs = mc_count_probs(grid, c.trials, g, c.seed, c.workers);
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) probs.push_back(count_probs_nh(grid[i], g));
  }
  for (const auto& p : probs) {
    if (trivial) {
      // Reference state stable iff mu > tau/2: counts 1 and 3 together.
      const double p0 = c.mc ? p.p1 + p.p3 : prob_trivial_stable(p.tau, g);
      t.rows.push_back({p.tau, p0});
    } else {
      t.rows.push_back({p.tau, p.p1, p.p2, p.p3});
    }
  }
  return t;
}

Table run_stoch(const RunConfig& c) {
  const TauGrid grid = grid_of(c);
  const SelectionPolicy policy =
      c.policy == "lowest-psi" ? SelectionPolicy::LowestPsi : SelectionPolicy::PreferReference;
  const BifurcationHistogram h =
      mc_bifurcation_histogram(grid, c.trials, law_of(c), policy, c.seed,
                               default_lambda_edges(c.bin_width, c.lambda_max), c.workers);
  Table t{{"tau", "lambda_bin_center", "count", "frequency"}, {}};
  const double n = static_cast<double>(h.trials);
  for (std::size_t r = 0; r < grid.size(); ++r) {
    const double tau = grid[r];
    for (std::size_t b = 0; b < h.counts[r].size(); ++b) {
      const std::uint64_t k = h.counts[r][b];
      if (k == 0) continue;
      const double centre = 0.5 * (h.lambda_edges[b] + h.lambda_edges[b + 1]);
      t.rows.push_back({tau, centre, static_cast<std::int64_t>(k), k / n});
    }
    const std::pair<const char*, std::uint64_t> overflow[] = {
        {"unstable", h.unstable[r]},
        {"out_of_range", h.out_of_range[r]},
        {"inadmissible", h.inadmissible[r]}};
    for (const auto& [label, k] : overflow) {
      if (k == 0) continue;
      t.rows.push_back({tau, std::string(label), static_cast<std::int64_t>(k), k / n});
    }
  }
  return t;
}

Table run_sample(const RunConfig& c) {
  const MaterialLaw law = law_of(c);
  Table t{{"index", "mu", "R1", "mu1", "mu2", "regime"}, {}};
  for (std::uint64_t i = 0; i < c.count; ++i) {
    const MaterialDraw d = draw_material(law, c.seed, static_cast<std::uint32_t>(i));
    Cell r1 = std::monostate{};
    if (d.r1) r1 = *d.r1;
    t.rows.push_back({static_cast<std::int64_t>(i), d.mu, r1, d.coeffs.mu1, d.coeffs.mu2,
                      str(to_string(classify_regime(d.coeffs.mu1, d.coeffs.mu2)))});
  }
  return t;
}

std::string run_regime(const RunConfig& c) { return str(to_string(classify_regime(*c.mu1, *c.mu2))); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (config.command == Command::Regime) {
      out << run_regime(config) << '\n';
      return 0;
    }
    const auto start = std::chrono::steady_clock::now();
    Table table;
    switch (config.command) {
      case Command::Diagram: table = run_diagram(config); break;
      case Command::Probs: table = run_probs(config); break;
      case Command::Stoch: table = run_stoch(config); break;
      case Command::Sample: table = run_sample(config); break;
      case Command::Regime: break;
    }
    const std::string body = render(table, config.format);
    if (config.out == "-") {
      out << body;
      return 0;
    }
    write_file_atomically(config.out, body);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    nlohmann::ordered_json manifest;
    manifest["version"] = RIVLIN_VERSION;
    manifest["command"] = std::string(to_string(config.command));
    manifest["config"] = config_to_json(config);
    manifest["seed"] = uses_seed(config.command) ? nlohmann::ordered_json(config.seed)
                                                 : nlohmann::ordered_json(nullptr);
    manifest["duration_ms"] = elapsed.count();
    manifest["rows"] = table.rows.size();
    try {
      write_file_atomically(config.out + ".manifest.json", manifest.dump(2) + "\n");
    } catch (...) {
      std::error_code ignored;
      std::filesystem::remove(config.out, ignored);
      throw;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rivlin::cli
