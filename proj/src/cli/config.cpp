#include "rivlin/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "rivlin/cli/table.hpp"

namespace rivlin::cli {
namespace {

struct CommandSpec {
  Command command;
  const char* name;
  const char* description;
  std::vector<std::string> keys;
};

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs{
      {Command::Diagram, "diagram", "Equilibria and their stability over a load grid",
       {"mu1", "mu2", "tau-min", "tau-max", "steps", "out", "format"}},
      {Command::Probs, "probs", "Neo-Hookean count probabilities (analytic or Monte Carlo)",
       {"gamma", "tau-min", "tau-max", "steps", "kind", "mc", "trials", "seed", "workers", "out",
        "format"}},
      {Command::Stoch, "stoch", "Stochastic bifurcation histogram",
       {"gamma", "beta", "shift", "tau-min", "tau-max", "steps", "trials", "seed", "workers",
        "policy", "bin-width", "lambda-max", "out", "format"}},
      {Command::Sample, "sample", "Draw random coefficient pairs",
       {"gamma", "beta", "shift", "count", "seed", "out", "format"}},
      {Command::Regime, "regime", "Classify a coefficient pair", {"mu1", "mu2"}},
  };
  return specs;
}

const CommandSpec& spec_for(Command c) {
  for (const auto& s : command_specs()) {
    if (s.command == c) return s;
  }
  throw std::logic_error("unknown command");
}

std::string help_for(const std::string& key) {
  static const std::map<std::string, std::string> help{
      {"mu1", "first Mooney-Rivlin coefficient"},
      {"mu2", "second Mooney-Rivlin coefficient (0 for neo-Hookean)"},
      {"gamma", "Gamma shape,scale of the shear modulus"},
      {"beta", "Beta parameters of R1; omit for a neo-Hookean ensemble"},
      {"shift", "zero | negative | <b>"},
      {"tau-min", "first load of the grid"},
      {"tau-max", "last load of the grid"},
      {"steps", "number of grid intervals"},
      {"trials", "Monte Carlo samples per load"},
      {"seed", "64-bit master seed"},
      {"workers", "worker threads, 0 for all cores"},
      {"policy", "prefer-reference | lowest-psi"},
      {"bin-width", "stretch bin width"},
      {"lambda-max", "largest binned stretch"},
      {"kind", "count | trivial"},
      {"mc", "estimate by Monte Carlo instead of the closed form"},
      {"count", "number of samples"},
      {"out", "output path, - for stdout"},
      {"format", "csv | json"},
  };
  return help.at(key);
}

[[noreturn]] void usage(const std::string& key, const std::string& message) {
  throw UsageError("--" + key + ": " + message);
}

double to_double(const std::string& key, const std::string& raw) {
  double v = 0.0;
  const char* first = raw.data();
  const char* last = raw.data() + raw.size();
  if (!raw.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    usage(key, "expected a finite number, got '" + raw + "'");
  }
  return v;
}

std::uint64_t to_uint(const std::string& key, const std::string& raw) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (res.ec != std::errc() || res.ptr != raw.data() + raw.size() || raw.empty()) {
    usage(key, "expected a non-negative integer, got '" + raw + "'");
  }
  return v;
}

std::pair<double, double> to_pair(const std::string& key, const std::string& raw) {
  const auto comma = raw.find(',');
  if (comma == std::string::npos || raw.find(',', comma + 1) != std::string::npos) {
    usage(key, "expected two comma-separated numbers, got '" + raw + "'");
  }
  const double a = to_double(key, raw.substr(0, comma));
  const double b = to_double(key, raw.substr(comma + 1));
  if (!(a > 0.0) || !(b > 0.0)) usage(key, "both parameters must be positive");
  return {a, b};
}

bool to_bool(const std::string& key, const std::string& raw) {
  if (raw == "true" || raw == "1") return true;
  if (raw == "false" || raw == "0") return false;
  usage(key, "expected true or false, got '" + raw + "'");
}

std::optional<std::string> json_to_raw(const std::string& key, const nlohmann::json& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return format_number(v[0].get<double>()) + "," + format_number(v[1].get<double>());
  }
  throw UsageError("config key '" + key + "': unsupported value " + v.dump());
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) usage("config", "cannot read '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    usage("config", "'" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) usage("config", "'" + path + "' must contain a JSON object");
  return j;
}

RunConfig build(Command command, const std::map<std::string, std::string>& raw) {
  RunConfig c;
  c.command = command;
  auto has = [&](const char* k) { return raw.count(k) > 0; };
  auto get = [&](const char* k) -> const std::string& { return raw.at(k); };

  if (has("mu1")) c.mu1 = to_double("mu1", get("mu1"));
  if (has("mu2")) c.mu2 = to_double("mu2", get("mu2"));
  if (has("gamma")) c.gamma = to_pair("gamma", get("gamma"));
  if (has("beta")) c.beta = to_pair("beta", get("beta"));
  if (has("shift")) c.shift = get("shift");
  if (has("tau-min")) c.tau_min = to_double("tau-min", get("tau-min"));
  if (has("tau-max")) c.tau_max = to_double("tau-max", get("tau-max"));
  if (has("steps")) {
    const std::uint64_t steps = to_uint("steps", get("steps"));
    if (steps < 1 || steps > 10'000'000) usage("steps", "must be between 1 and 10000000");
    c.steps = static_cast<int>(steps);
  }
  if (has("trials")) c.trials = to_uint("trials", get("trials"));
  if (has("seed")) c.seed = to_uint("seed", get("seed"));
  if (has("workers")) {
    const std::uint64_t w = to_uint("workers", get("workers"));
    if (w > 4096) usage("workers", "must be at most 4096");
    c.workers = static_cast<unsigned>(w);
  }
  if (has("policy")) c.policy = get("policy");
  if (has("bin-width")) c.bin_width = to_double("bin-width", get("bin-width"));
  if (has("lambda-max")) c.lambda_max = to_double("lambda-max", get("lambda-max"));
  if (has("kind")) c.kind = get("kind");
  if (has("mc")) c.mc = to_bool("mc", get("mc"));
  if (has("count")) c.count = to_uint("count", get("count"));
  if (has("out")) c.out = get("out");
  if (has("format")) {
    const std::string& f = get("format");
    if (f == "csv") {
      c.format = OutputFormat::Csv;
    } else if (f == "json") {
      c.format = OutputFormat::Json;
    } else {
      usage("format", "expected csv or json, got '" + f + "'");
    }
  }

  const auto& keys = spec_for(command).keys;
  auto uses = [&](const char* k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };

  if (uses("mu1")) {
    if (!c.mu1) usage("mu1", "required");
    if (!c.mu2) usage("mu2", "required");
    if (command != Command::Regime && (!(*c.mu1 > 0.0) || !(*c.mu1 + *c.mu2 > 0.0))) {
      usage("mu1", "model requires mu1 > 0 and mu1 + mu2 > 0");
    }
  }
  if (uses("gamma") && !c.gamma) usage("gamma", "required");
  if (uses("tau-max")) {
    if (!c.tau_max) usage("tau-max", "required");
    if (!(*c.tau_max > c.tau_min)) usage("tau-max", "must exceed --tau-min");
  }
  if (command == Command::Probs && !(c.tau_min > 0.0)) {
    usage("tau-min", "probabilities are defined for loads > 0");
  }
  if (uses("trials") && c.trials < 1) usage("trials", "must be >= 1");
  if (uses("trials") && c.trials > 0xFFFFFFFFull) usage("trials", "must be < 2^32");
  if (uses("count") && (c.count < 1 || c.count > 0xFFFFFFFFull)) {
    usage("count", "must be between 1 and 2^32 - 1");
  }
  if (uses("shift") && c.shift != "zero" && c.shift != "negative") {
    to_double("shift", c.shift);
  }
  if (uses("policy") && c.policy != "prefer-reference" && c.policy != "lowest-psi") {
    usage("policy", "expected prefer-reference or lowest-psi, got '" + c.policy + "'");
  }
  if (uses("kind") && c.kind != "count" && c.kind != "trivial") {
    usage("kind", "expected count or trivial, got '" + c.kind + "'");
  }
  if (uses("bin-width") && !(c.bin_width > 0.0)) usage("bin-width", "must be positive");
  if (uses("lambda-max")) {
    if (!(c.lambda_max > 0.0)) usage("lambda-max", "must be positive");
    if (c.lambda_max / c.bin_width > 1e7) usage("bin-width", "too many bins");
    if (c.lambda_max < c.bin_width) usage("lambda-max", "must be at least one bin width");
  }
  if (uses("out") && c.out.empty()) usage("out", "must not be empty");
  return c;
}

}  // namespace

std::string_view to_string(Command c) { return spec_for(c).name; }

const std::vector<std::string>& keys_for(Command c) { return spec_for(c).keys; }

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Homogeneous equilibria of a Mooney-Rivlin cube under equitriaxial dead loads",
               "rivlin-cube"};
  app.require_subcommand(1);
  app.set_help_flag("-h,--help", "print help");

  struct Parsed {
    CLI::App* app;
    const CommandSpec* spec;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    bool mc = false;
    std::string config_path;
  };
  std::vector<std::unique_ptr<Parsed>> subs;
  for (const auto& spec : command_specs()) {
    auto p = std::make_unique<Parsed>();
    p->spec = &spec;
    p->app = app.add_subcommand(spec.name, spec.description);
    for (const auto& key : spec.keys) {
      if (key == "mc") {
        p->options[key] = p->app->add_flag("--mc", p->mc, help_for(key));
      } else {
        p->options[key] = p->app->add_option("--" + key, p->values[key], help_for(key));
      }
    }
    p->app->add_option("--config", p->config_path, "JSON file of flag values");
    subs.push_back(std::move(p));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    for (const auto& p : subs) {
      if (p->app->parsed()) throw HelpRequested(p->app->help());
    }
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& p : subs) {
    if (!p->app->parsed()) continue;
    std::map<std::string, std::string> raw;
    for (const auto& key : p->spec->keys) {
      if (p->options[key]->count() == 0) continue;
      raw[key] = key == "mc" ? (p->mc ? "true" : "false") : p->values[key];
    }
    if (!p->config_path.empty()) {
      const nlohmann::json file = load_config_file(p->config_path);
      for (const auto& [key, value] : file.items()) {
        const auto& keys = p->spec->keys;
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
          throw UsageError("--config: unknown key '" + key + "' for command " + p->spec->name);
        }
        if (raw.count(key)) continue;
        if (auto text = json_to_raw(key, value)) raw[key] = *text;
      }
    }
    return build(p->spec->command, raw);
  }
  throw UsageError("a command is required");
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j = nlohmann::json::object();
  auto pair_json = [](const std::optional<std::pair<double, double>>& p) -> nlohmann::json {
    if (!p) return nullptr;
    return nlohmann::json::array({p->first, p->second});
  };
  auto opt_json = [](const std::optional<double>& v) -> nlohmann::json {
    if (!v) return nullptr;
    return *v;
  };
  for (const auto& key : keys_for(c.command)) {
    if (key == "mu1") j[key] = opt_json(c.mu1);
    else if (key == "mu2") j[key] = opt_json(c.mu2);
    else if (key == "gamma") j[key] = pair_json(c.gamma);
    else if (key == "beta") j[key] = pair_json(c.beta);
    else if (key == "shift") j[key] = c.shift;
    else if (key == "tau-min") j[key] = c.tau_min;
    else if (key == "tau-max") j[key] = opt_json(c.tau_max);
    else if (key == "steps") j[key] = c.steps;
    else if (key == "trials") j[key] = c.trials;
    else if (key == "seed") j[key] = c.seed;
    else if (key == "workers") j[key] = c.workers;
    else if (key == "policy") j[key] = c.policy;
    else if (key == "bin-width") j[key] = c.bin_width;
    else if (key == "lambda-max") j[key] = c.lambda_max;
    else if (key == "kind") j[key] = c.kind;
    else if (key == "mc") j[key] = c.mc;
    else if (key == "count") j[key] = c.count;
    else if (key == "out") j[key] = c.out;
    else if (key == "format") j[key] = c.format == OutputFormat::Csv ? "csv" : "json";
  }
  return j;
}

}  // namespace rivlin::cli
