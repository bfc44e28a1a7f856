#include "hetdss/bound.hpp"

#include <algorithm>
#include <string>

namespace hetdss {
namespace {

// totals[p][l]: download into the node at position p through its surviving
// set l, counting only helpers that have not failed earlier in the sequence.
std::vector<std::vector<Rational>> prefix_totals(const DssSpec& spec, const BetaLayout& layout,
                                                 const Assignment& assignment,
                                                 const std::vector<NodeIndex>& nodes) {
  std::vector<bool> failed(spec.node_count, false);
  std::vector<std::vector<Rational>> totals(nodes.size());
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    const NodeIndex u = nodes[p];
    const auto& sets = spec.surviving_sets[u];
    totals[p].resize(sets.size());
    for (std::size_t l = 0; l < sets.size(); ++l) {
      std::size_t slot = layout.offset(u, l);
      for (NodeIndex helper : sets[l]) {
        if (!failed[helper]) totals[p][l] += assignment.beta[slot];
        ++slot;
      }
    }
    failed[u] = true;
  }
  return totals;
}

}  // namespace

EnumerationLimitExceeded::EnumerationLimitExceeded(std::uint64_t required, std::uint64_t limit)
    : std::runtime_error("bound needs " + std::to_string(required) + " scenario evaluations, limit is " +
                         std::to_string(limit) + " (raise --max-scenarios or DSS_MAX_SCENARIOS)"),
      required_(required),
      limit_(limit) {}

void check_enumeration_limit(const DssSpec& spec, const BoundOptions& options) {
  std::uint64_t required = 0;
  try {
    required = flow_graph_count(spec);
  } catch (const CountOverflow&) {
    throw EnumerationLimitExceeded(UINT64_MAX, options.max_scenarios);
  }
  if (required > options.max_scenarios) throw EnumerationLimitExceeded(required, options.max_scenarios);
}

Rational scenario_term(const DssSpec& spec, const Assignment& assignment, const RepairScenario& scenario) {
  check_scenario(spec, scenario);
  check_assignment_shape(spec, assignment);
  const BetaLayout layout(spec);
  const auto& nodes = scenario.sequence.nodes;
  std::vector<bool> failed(spec.node_count, false);
  Rational term = 0;
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    const NodeIndex u = nodes[p];
    const std::size_t set = scenario.choices[p];
    Rational download = 0;
    for (NodeIndex helper : spec.surviving_sets[u][set]) {
      if (!failed[helper]) download += assignment.beta[layout.index(u, set, helper)];
    }
    term += std::min(assignment.alpha[u], download);
    failed[u] = true;
  }
  return term;
}

BoundReport q_bound(const DssSpec& spec, const Assignment& assignment, const BoundOptions& options) {
  check_assignment_shape(spec, assignment);
  check_enumeration_limit(spec, options);
  const BetaLayout layout(spec);

  BoundReport report;
  bool have_min = false;
  for (std::size_t t = 0; t < spec.reconstruction_sets.size(); ++t) {
    bool have_set_min = false;
    Rational set_min;
    NodeSequenceStream sequences(spec, t);
    while (auto sequence = sequences.next()) {
      const auto totals = prefix_totals(spec, layout, assignment, sequence->nodes);
      ScenarioStream scenarios(spec, *sequence);
      while (auto scenario = scenarios.next()) {
        Rational term = 0;
        for (std::size_t p = 0; p < totals.size(); ++p) {
          term += std::min(assignment.alpha[sequence->nodes[p]], totals[p][scenario->choices[p]]);
        }
        if (!have_set_min || term < set_min) {
          set_min = term;
          have_set_min = true;
        }
        if (!have_min || term < report.q) {
          report.q = term;
          report.argmin = *scenario;
          have_min = true;
        }
      }
    }
    report.per_set.push_back(set_min);
  }
  return report;
}

Rational q_bound_exchanged(const DssSpec& spec, const Assignment& assignment, const BoundOptions& options) {
  check_assignment_shape(spec, assignment);
  check_enumeration_limit(spec, options);
  const BetaLayout layout(spec);

  bool have_min = false;
  Rational q;
  for (std::size_t t = 0; t < spec.reconstruction_sets.size(); ++t) {
    NodeSequenceStream sequences(spec, t);
    while (auto sequence = sequences.next()) {
      const auto totals = prefix_totals(spec, layout, assignment, sequence->nodes);
      Rational value = 0;
      for (std::size_t p = 0; p < totals.size(); ++p) {
        const Rational& cheapest = *std::min_element(totals[p].begin(), totals[p].end());
        value += std::min(assignment.alpha[sequence->nodes[p]], cheapest);
      }
      if (!have_min || value < q) {
        q = value;
        have_min = true;
      }
    }
  }
  return q;
}

Rational homogeneous_term(const Rational& alpha, const Rational& beta, std::size_t k, std::size_t d) {
  Rational total = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t helpers = d + 1 >= i ? d + 1 - i : 0;
    total += std::min(alpha, Rational(helpers) * beta);
  }
  return total;
}

FileSizeCheck file_size_check(const DssSpec& spec, const Assignment& assignment, const BoundOptions& options) {
  FileSizeCheck check;
  check.q = q_bound(spec, assignment, options).q;
  check.margin = check.q - spec.file_size;
  check.feasible = check.margin >= 0;
  return check;
}

}  // namespace hetdss
