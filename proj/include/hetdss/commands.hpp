#pragma once

// The hetdss subcommands as library functions. Each writes its report to
// `out`, diagnostics to `err`, and returns the process exit code:
//   0 success, 1 usage or input error, 2 file does not fit (B > Q).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hetdss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;

/// --max-scenarios if given, else DSS_MAX_SCENARIOS, else the library default.
/// Throws std::invalid_argument on a malformed environment value.
std::uint64_t resolve_max_scenarios(std::optional<std::uint64_t> flag);

struct ScenarioSelector {
  std::optional<std::size_t> reconstruction_set;
  std::optional<std::vector<std::size_t>> sequence;
  std::optional<std::vector<std::size_t>> choices;

  bool any() const { return reconstruction_set || sequence || choices; }
};

struct EvaluateOptions {
  std::filesystem::path spec;
  bool json = false;
  std::optional<std::uint64_t> max_scenarios;
};

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err);

struct BoundCommandOptions {
  std::filesystem::path spec;
  bool oracle = false;
  /// Oracle graphs with unlimited step-0 storage.
  bool unbounded_initial = false;
  ScenarioSelector selector;
  std::optional<std::uint64_t> max_scenarios;
};

int cmd_bound(const BoundCommandOptions& options, std::ostream& out, std::ostream& err);

struct ParetoOptions {
  std::filesystem::path spec;
  std::string mode = "general";
  std::size_t k = 0;
  std::size_t d = 0;
  std::optional<std::vector<double>> weights;
  std::optional<std::string> grid;  // "lo:hi:count"
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> export_lp;  // LP text for the first weight
  bool floating = false;
  std::optional<std::uint64_t> max_scenarios;
};

int cmd_pareto(const ParetoOptions& options, std::ostream& out, std::ostream& err);

struct FlowgraphOptions {
  std::filesystem::path spec;
  ScenarioSelector selector;
  std::optional<std::filesystem::path> dot;
  bool unbounded_initial = false;
  std::optional<std::uint64_t> max_scenarios;
};

int cmd_flowgraph(const FlowgraphOptions& options, std::ostream& out, std::ostream& err);

/// Parses "lo:hi:count".
std::vector<double> parse_grid(const std::string& text);

}  // namespace hetdss::cli
