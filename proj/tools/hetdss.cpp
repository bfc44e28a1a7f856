#include "hetdss/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_selector(CLI::App* cmd, hetdss::cli::ScenarioSelector& sel) {
  cmd->add_option("--reconstruction-set", sel.reconstruction_set, "Reconstruction set index (0-based)");
  cmd->add_option("--sequence", sel.sequence, "Failure order, e.g. 0,1,2")->delimiter(',');
  cmd->add_option("--choices", sel.choices, "Surviving-set index per position, e.g. 0,0,0")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = hetdss::cli;
  CLI::App app{"Heterogeneous distributed storage: costs, min-cut bound and cost tradeoff"};
  app.require_subcommand(1);

  cli::EvaluateOptions evaluate;
  auto* ev = app.add_subcommand("evaluate", "Costs and B <= Q verdict of the spec's operating point");
  ev->add_option("spec", evaluate.spec, "Spec file (JSON)")->required();
  ev->add_flag("--json", evaluate.json, "Machine-readable output");
  ev->add_option("--max-scenarios", evaluate.max_scenarios, "Enumeration ceiling (env DSS_MAX_SCENARIOS)");

  cli::BoundCommandOptions bound;
  auto* bd = app.add_subcommand("bound", "Closed-form bound Q and its minimizing scenario");
  bd->add_option("spec", bound.spec, "Spec file (JSON)")->required();
  bd->add_flag("--oracle", bound.oracle, "Cross-check with max-flow on every flow graph");
  bd->add_flag("--unbounded-initial", bound.unbounded_initial, "Oracle graphs with unlimited step-0 storage");
  bd->add_option("--max-scenarios", bound.max_scenarios, "Enumeration ceiling (env DSS_MAX_SCENARIOS)");
  add_selector(bd, bound.selector);

  cli::ParetoOptions pareto;
  auto* pa = app.add_subcommand("pareto", "Weighted-sum sweep of storage vs repair cost (CSV)");
  pa->add_option("spec", pareto.spec, "Spec file (JSON)")->required();
  pa->add_option("--mode", pareto.mode,
                 "general | uniform_reconstruction | uniform_repair_degree | uniform_beta | homogeneous")
      ->capture_default_str();
  pa->add_option("--k", pareto.k, "Reconstruction degree for uniform_reconstruction/homogeneous");
  pa->add_option("--d", pareto.d, "Repair degree for uniform_repair_degree/homogeneous");
  pa->add_option("--weights", pareto.weights, "Explicit lambda values, ascending")->delimiter(',');
  pa->add_option("--grid", pareto.grid, "Log-spaced lambda grid lo:hi:count (default 1e-3:1e3:10)");
  pa->add_option("--out", pareto.out, "Write CSV here instead of stdout");
  pa->add_option("--export-lp", pareto.export_lp, "Write the LP for the first lambda in lp_solve format");
  pa->add_flag("--floating", pareto.floating, "Double-precision simplex instead of exact rationals");
  pa->add_option("--max-scenarios", pareto.max_scenarios, "Enumeration ceiling (env DSS_MAX_SCENARIOS)");

  cli::FlowgraphOptions flow;
  auto* fg = app.add_subcommand("flowgraph", "Information flow graph of one scenario as Graphviz DOT");
  fg->add_option("spec", flow.spec, "Spec file (JSON)")->required();
  fg->add_option("--dot", flow.dot, "Write DOT here instead of stdout");
  fg->add_flag("--unbounded-initial", flow.unbounded_initial, "Unlimited step-0 storage edges");
  fg->add_option("--max-scenarios", flow.max_scenarios, "Enumeration ceiling (env DSS_MAX_SCENARIOS)");
  add_selector(fg, flow.selector);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInputError;
  }

  if (*ev) return cli::cmd_evaluate(evaluate, std::cout, std::cerr);
  if (*bd) return cli::cmd_bound(bound, std::cout, std::cerr);
  if (*pa) return cli::cmd_pareto(pareto, std::cout, std::cerr);
  return cli::cmd_flowgraph(flow, std::cout, std::cerr);
}
