#include "hetdss/commands.hpp"

#include "hetdss/bound.hpp"
#include "hetdss/cost.hpp"
#include "hetdss/flowgraph.hpp"
#include "hetdss/optimizer.hpp"
#include "hetdss/specfile.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace hetdss::cli {
namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_set(const NodeSet& set) {
  std::string text = "{";
  for (std::size_t i = 0; i < set.size(); ++i) text += (i ? "," : "") + std::to_string(set[i]);
  return text + "}";
}

std::string format_list(const std::vector<std::size_t>& values) {
  std::string text = "<";
  for (std::size_t i = 0; i < values.size(); ++i) text += (i ? "," : "") + std::to_string(values[i]);
  return text + ">";
}

std::string describe(const DssSpec& spec, const RepairScenario& sc) {
  std::string text = "reconstruction set " + std::to_string(sc.sequence.set_index) + " " +
                     format_set(spec.reconstruction_sets[sc.sequence.set_index]) + ", sequence " +
                     format_list(sc.sequence.nodes) + ", choices " + format_list(sc.choices) + " (";
  for (std::size_t p = 0; p < sc.choices.size(); ++p) {
    text += (p ? " " : "") + format_set(spec.surviving_sets[sc.sequence.nodes[p]][sc.choices[p]]);
  }
  return text + ")";
}

std::string exact_and_decimal(const Rational& value) {
  const std::string exact = to_string(value);
  const std::string decimal = to_decimal_string(value);
  return exact == decimal ? exact : exact + " (" + decimal + ")";
}

std::string format_double(double value) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

nlohmann::ordered_json number_json(const Rational& value) {
  nlohmann::ordered_json j;
  j["exact"] = to_string(value);
  j["value"] = to_double(value);
  return j;
}

SpecDocument load(const std::filesystem::path& path, std::ostream& err) {
  SpecDocument doc = load_spec(path);
  for (const auto& w : doc.warnings) err << "warning: " << w << '\n';
  return doc;
}

const Assignment& require_assignment(const SpecDocument& doc, const char* command) {
  if (!doc.assignment) {
    throw InputError(std::string(command) + " needs an operating point: the spec has no \"alphas\"");
  }
  return *doc.assignment;
}

// Visits the scenarios a selector admits, in enumeration order.
void for_each_selected(const DssSpec& spec, const ScenarioSelector& sel,
                       const std::function<void(const RepairScenario&)>& visit) {
  if (sel.choices && !sel.sequence) throw InputError("--choices needs --sequence");
  std::optional<std::size_t> set = sel.reconstruction_set;
  if (set && *set >= spec.reconstruction_sets.size()) {
    throw InputError("--reconstruction-set " + std::to_string(*set) + " out of range (" +
                     std::to_string(spec.reconstruction_sets.size()) + " sets)");
  }
  if (sel.sequence) {
    NodeSet sorted = *sel.sequence;
    std::sort(sorted.begin(), sorted.end());
    if (!set) {
      auto it = std::find(spec.reconstruction_sets.begin(), spec.reconstruction_sets.end(), sorted);
      if (it == spec.reconstruction_sets.end()) {
        throw InputError("--sequence " + format_list(*sel.sequence) + " is not an ordering of any reconstruction set");
      }
      set = static_cast<std::size_t>(it - spec.reconstruction_sets.begin());
    }
    if (spec.reconstruction_sets[*set] != sorted) {
      throw InputError("--sequence " + format_list(*sel.sequence) + " is not an ordering of reconstruction set " +
                       std::to_string(*set) + " " + format_set(spec.reconstruction_sets[*set]));
    }
    NodeSequence sequence{*set, *sel.sequence};
    if (sel.choices) {
      RepairScenario sc{sequence, *sel.choices};
      try {
        check_scenario(spec, sc);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--choices: ") + e.what());
      }
      visit(sc);
      return;
    }
    ScenarioStream scenarios(spec, sequence);
    while (auto sc = scenarios.next()) visit(*sc);
    return;
  }
  const std::size_t first = set ? *set : 0;
  const std::size_t last = set ? *set + 1 : spec.reconstruction_sets.size();
  for (std::size_t t = first; t < last; ++t) {
    NodeSequenceStream sequences(spec, t);
    while (auto seq = sequences.next()) {
      ScenarioStream scenarios(spec, *seq);
      while (auto sc = scenarios.next()) visit(*sc);
    }
  }
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const SpecError& e) {
    for (const auto& d : e.diagnostics()) err << "error: " << d << '\n';
  } catch (const InvalidSpec& e) {
    for (const auto& d : e.errors()) err << "error: " << d << '\n';
  } catch (const EnumerationLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
  } catch (const GraphTooLarge& e) {
    err << "error: " << e.what() << '\n';
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace

std::uint64_t resolve_max_scenarios(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DSS_MAX_SCENARIOS"); env && *env) {
    std::uint64_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end) {
      throw std::invalid_argument(std::string("DSS_MAX_SCENARIOS: not a nonnegative integer: ") + env);
    }
    return value;
  }
  return kDefaultMaxScenarios;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw std::invalid_argument("--grid expects lo:hi:count, got '" + text + "'");
  try {
    std::size_t used = 0;
    const double lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    const double hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    const unsigned long count = std::stoul(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    return log_grid(lo, hi, count);
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("--grid '" + text + "': " + e.what());
  }
}

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ::hetdss::BoundOptions limits{resolve_max_scenarios(options.max_scenarios)};
    const SpecDocument doc = load(options.spec, err);
    const DssSpec& spec = doc.spec;
    const Assignment& a = require_assignment(doc, "evaluate");
    const CostReport costs = cost_report(spec, a);
    const BoundReport bound = q_bound(spec, a, limits);
    const bool feasible = spec.file_size <= bound.q;

    if (options.json) {
      nlohmann::ordered_json j;
      j["nodes"] = spec.node_count;
      j["file_size"] = number_json(spec.file_size);
      j["storage_cost"] = number_json(costs.storage_cost);
      j["node_repair_cost"] = nlohmann::ordered_json::array();
      for (const auto& r : costs.node_repair) j["node_repair_cost"].push_back(number_json(r));
      j["repair_cost"] = number_json(costs.repair_cost);
      j["q"] = number_json(bound.q);
      j["argmin"] = {{"reconstruction_set", bound.argmin.sequence.set_index},
                     {"sequence", bound.argmin.sequence.nodes},
                     {"choices", bound.argmin.choices}};
      j["feasible"] = feasible;
      out << j.dump(2) << '\n';
    } else {
      out << "nodes: " << spec.node_count << ", file size B = " << exact_and_decimal(spec.file_size) << '\n';
      out << "storage cost C_s = " << exact_and_decimal(costs.storage_cost) << '\n';
      out << "node repair cost r(beta):\n";
      for (std::size_t i = 0; i < costs.node_repair.size(); ++i) {
        out << "  node " << i << ": " << exact_and_decimal(costs.node_repair[i]) << '\n';
      }
      out << "repair cost C_r = " << exact_and_decimal(costs.repair_cost) << '\n';
      out << "bound Q = " << exact_and_decimal(bound.q) << '\n';
      out << "  attained at " << describe(spec, bound.argmin) << '\n';
      out << "B <= Q: " << (feasible ? "yes" : "no") << " (margin " << exact_and_decimal(bound.q - spec.file_size)
          << ")\n";
    }
    return feasible ? kExitOk : kExitInfeasible;
  });
}

int cmd_bound(const BoundCommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ::hetdss::BoundOptions limits{resolve_max_scenarios(options.max_scenarios)};
    const SpecDocument doc = load(options.spec, err);
    const DssSpec& spec = doc.spec;
    const Assignment& a = require_assignment(doc, "bound");
    if (!options.selector.any() || options.oracle) check_enumeration_limit(spec, limits);

    Rational q;
    RepairScenario argmin;
    std::uint64_t count = 0;
    if (!options.selector.any()) {
      BoundReport report = q_bound(spec, a, limits);
      q = report.q;
      argmin = report.argmin;
      count = flow_graph_count(spec);
    } else {
      for_each_selected(spec, options.selector, [&](const RepairScenario& sc) {
        const Rational term = scenario_term(spec, a, sc);
        if (count == 0 || term < q) {
          q = term;
          argmin = sc;
        }
        ++count;
      });
    }

    out << (options.selector.any() ? "selected scenarios: " : "scenarios: ") << count << '\n';
    out << (count == 1 ? "term = " : "Q = ") << exact_and_decimal(q) << '\n';
    out << "argmin: " << describe(spec, argmin) << '\n';
    if (!options.selector.any()) {
      out << "B <= Q: " << (spec.file_size <= q ? "yes" : "no") << " (B = " << exact_and_decimal(spec.file_size)
          << ")\n";
    }

    if (options.oracle) {
      BuildOptions build;
      build.bounded_initial_storage = !options.unbounded_initial;
      Rational flow_min;
      RepairScenario flow_argmin;
      std::uint64_t graphs = 0;
      std::uint64_t mismatched = 0;
      for_each_selected(spec, options.selector, [&](const RepairScenario& sc) {
        const Rational flow = max_flow(build_flow_graph(spec, a, sc, build));
        if (flow != scenario_term(spec, a, sc)) ++mismatched;
        if (graphs == 0 || flow < flow_min) {
          flow_min = flow;
          flow_argmin = sc;
        }
        ++graphs;
      });
      out << "oracle: minimum max-flow over " << graphs << " flow graphs = " << exact_and_decimal(flow_min) << '\n';
      out << "oracle: attained at " << describe(spec, flow_argmin) << '\n';
      out << "oracle: " << (flow_min == q ? "agrees with" : "DISAGREES with") << " the closed form; "
          << mismatched << " of " << graphs << " graphs differ from their scenario term\n";
    }
    return kExitOk;
  });
}

int cmd_pareto(const ParetoOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.weights && options.grid) throw InputError("give either --weights or --grid, not both");
    ProblemConfig config;
    config.mode = parse_mode(options.mode);
    config.k = options.k;
    config.d = options.d;
    if (options.weights) config.weights = *options.weights;
    if (options.grid) config.weights = parse_grid(*options.grid);
    config.limits.max_scenarios = resolve_max_scenarios(options.max_scenarios);
    if (options.floating) config.solver.arithmetic = lp::Arithmetic::floating;

    const SpecDocument doc = load(options.spec, err);
    if (doc.assignment) err << "note: alphas/betas in the spec are ignored by pareto\n";

    if (options.export_lp) {
      const DssLinearProgram model =
          build_lp(doc.spec, config, rational_from_decimal_double(config.weights.front()));
      std::ofstream lp_file(*options.export_lp);
      if (!lp_file) throw InputError(options.export_lp->string() + ": cannot write");
      lp_file << lp::to_lp_format(model.program);
    }

    const SweepResult result = sweep(doc.spec, config);
    const std::vector<ParetoPoint> points = result.points();
    std::vector<bool> on_front(points.size(), false);
    for (std::size_t i : pareto_indices(points)) on_front[i] = true;

    const BetaLayout layout(result.spec);
    std::ostringstream csv;
    csv << "lambda,C_s,C_r,Q";
    for (std::size_t j = 0; j < result.spec.node_count; ++j) csv << ",alpha_" << j;
    for (const BetaSlot& s : layout.slots()) csv << ",beta_" << s.node << '_' << s.set << '_' << s.helper;
    csv << ",pareto\n";
    const std::size_t width = result.spec.node_count + layout.size();

    std::size_t next_point = 0;
    std::size_t succeeded = 0;
    bool all_infeasible = true;
    for (const SweepOutcome& o : result.outcomes) {
      csv << format_double(o.lambda);
      if (!o.point) {
        csv << ',' << lp::to_string(o.status) << ",,";
        for (std::size_t c = 0; c < width; ++c) csv << ',';
        csv << ",0\n";
        err << "lambda " << format_double(o.lambda) << ": " << o.message << '\n';
        if (o.status != lp::Status::infeasible) all_infeasible = false;
        continue;
      }
      const ParetoPoint& p = *o.point;
      csv << ',' << to_decimal_string(p.storage_cost) << ',' << to_decimal_string(p.repair_cost) << ','
          << to_decimal_string(p.q);
      for (const auto& v : p.assignment.alpha) csv << ',' << to_decimal_string(v);
      for (const auto& v : p.assignment.beta) csv << ',' << to_decimal_string(v);
      csv << ',' << (on_front[next_point] ? 1 : 0) << '\n';
      ++next_point;
      ++succeeded;
    }

    if (options.out) {
      std::ofstream file(*options.out, std::ios::binary);
      if (!file) throw InputError(options.out->string() + ": cannot write");
      file << csv.str();
    } else {
      out << csv.str();
    }
    if (succeeded > 0) return kExitOk;
    return all_infeasible ? kExitInfeasible : kExitInputError;
  });
}

int cmd_flowgraph(const FlowgraphOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SpecDocument doc = load(options.spec, err);
    const DssSpec& spec = doc.spec;
    const Assignment& a = require_assignment(doc, "flowgraph");

    RepairScenario scenario;
    if (options.selector.choices) {
      for_each_selected(spec, options.selector, [&](const RepairScenario& sc) { scenario = sc; });
    } else {
      // Without a full selector, draw the first minimizing scenario it admits.
      ::hetdss::BoundOptions limits{resolve_max_scenarios(options.max_scenarios)};
      if (!options.selector.any()) check_enumeration_limit(spec, limits);
      Rational best;
      bool have = false;
      for_each_selected(spec, options.selector, [&](const RepairScenario& sc) {
        const Rational term = scenario_term(spec, a, sc);
        if (!have || term < best) {
          best = term;
          scenario = sc;
          have = true;
        }
      });
    }

    BuildOptions build;
    build.bounded_initial_storage = !options.unbounded_initial;
    const FlowGraph graph = build_flow_graph(spec, a, scenario, build);
    const std::string dot = to_dot(graph);
    if (options.dot) {
      std::ofstream file(*options.dot, std::ios::binary);
      if (!file) throw InputError(options.dot->string() + ": cannot write");
      file << dot;
      out << "scenario: " << describe(spec, scenario) << '\n';
      out << "vertices: " << graph.vertices().size() << ", edges: " << graph.edges().size() << '\n';
      out << "max-flow = " << exact_and_decimal(max_flow(graph)) << ", scenario term = "
          << exact_and_decimal(scenario_term(spec, a, scenario)) << '\n';
      out << "wrote " << options.dot->string() << '\n';
    } else {
      out << dot;
    }
    return kExitOk;
  });
}

}  // namespace hetdss::cli
