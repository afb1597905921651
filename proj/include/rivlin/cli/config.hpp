#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rivlin::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown for --help; carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Diagram, Probs, Stoch, Sample, Regime };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command c);

struct RunConfig {
  Command command = Command::Regime;
  std::optional<double> mu1;
  std::optional<double> mu2;
  std::optional<std::pair<double, double>> gamma;
  std::optional<std::pair<double, double>> beta;
  std::string shift = "zero";
  double tau_min = 0.0;
  std::optional<double> tau_max;
  int steps = 100;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string policy = "prefer-reference";
  double bin_width = 0.005;
  double lambda_max = 5.0;
  std::string kind = "count";
  bool mc = false;
  std::uint64_t count = 10;
  std::string out = "-";
  OutputFormat format = OutputFormat::Csv;
};

/// Long flag names (without dashes) accepted by a command, `config` excluded.
const std::vector<std::string>& keys_for(Command c);

/// Parses `<command> [flags]`. `--config file.json` supplies a flat object
/// keyed by flag names; flags given on the command line take precedence.
/// Throws UsageError naming the offending flag or key.
RunConfig parse_config(const std::vector<std::string>& args);

/// Resolved configuration as a flat object that parse_config accepts back
/// through --config.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace rivlin::cli
