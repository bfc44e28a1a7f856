#include "hetdss/model.hpp"

#include <algorithm>
#include <sstream>

namespace hetdss {
namespace {

std::string format_set(const NodeSet& set) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out << ", ";
    out << set[i];
  }
  out << '}';
  return out.str();
}

std::string join(const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& line : lines) {
    if (!text.empty()) text += "; ";
    text += line;
  }
  return text;
}

// Sorts `set` in place; reports out-of-range and repeated members.
void check_node_set(NodeSet& set, std::size_t node_count, const std::string& where,
                    std::vector<Diagnostic>& out) {
  if (set.empty()) {
    out.push_back({Severity::error, where + " is empty"});
    return;
  }
  for (NodeIndex node : set) {
    if (node >= node_count) {
      out.push_back({Severity::error, where + " references node " + std::to_string(node) +
                                          " but the system has " + std::to_string(node_count) +
                                          " nodes"});
    }
  }
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
    out.push_back({Severity::error, where + " lists a node more than once"});
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
}

}  // namespace

BetaLayout::BetaLayout(const DssSpec& spec) : sets_(spec.surviving_sets) {
  offsets_.resize(spec.surviving_sets.size());
  for (NodeIndex node = 0; node < spec.surviving_sets.size(); ++node) {
    for (std::size_t set = 0; set < spec.surviving_sets[node].size(); ++set) {
      offsets_[node].push_back(slots_.size());
      for (NodeIndex helper : spec.surviving_sets[node][set]) {
        slots_.push_back({node, set, helper});
      }
    }
  }
}

std::optional<std::size_t> BetaLayout::find(NodeIndex node, std::size_t set,
                                            NodeIndex helper) const {
  if (node >= sets_.size() || set >= sets_[node].size()) return std::nullopt;
  const NodeSet& members = sets_[node][set];
  auto it = std::lower_bound(members.begin(), members.end(), helper);
  if (it == members.end() || *it != helper) return std::nullopt;
  return offsets_[node][set] + static_cast<std::size_t>(it - members.begin());
}

std::size_t BetaLayout::index(NodeIndex node, std::size_t set, NodeIndex helper) const {
  if (auto found = find(node, set, helper)) return *found;
  throw std::out_of_range("no download slot for node " + std::to_string(node) + ", set " +
                          std::to_string(set) + ", helper " + std::to_string(helper));
}

Assignment Assignment::zero(const DssSpec& spec) {
  return Assignment{std::vector<Rational>(spec.node_count), std::vector<Rational>(BetaLayout(spec).size())};
}

bool ValidationReport::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::vector<std::string> ValidationReport::errors() const {
  std::vector<std::string> out;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) out.push_back(d.message);
  }
  return out;
}

std::vector<std::string> ValidationReport::warnings() const {
  std::vector<std::string> out;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::warning) out.push_back(d.message);
  }
  return out;
}

InvalidSpec::InvalidSpec(std::vector<std::string> errors)
    : std::runtime_error("invalid DSS spec: " + join(errors)), errors_(std::move(errors)) {}

ValidationReport validate(const DssSpec& spec) {
  ValidationReport report;
  auto& out = report.diagnostics;
  DssSpec norm = spec;
  const std::size_t n = spec.node_count;

  if (n == 0) out.push_back({Severity::error, "node_count must be positive"});
  if (spec.file_size <= 0) out.push_back({Severity::error, "file_size must be positive"});

  auto check_costs = [&](const std::vector<Rational>& costs, const std::string& name) {
    if (costs.size() != n) {
      out.push_back({Severity::error, name + " has " + std::to_string(costs.size()) +
                                          " entries, expected " + std::to_string(n)});
    }
    for (std::size_t i = 0; i < costs.size(); ++i) {
      if (costs[i] < 0) {
        out.push_back({Severity::error, name + "[" + std::to_string(i) + "] is negative"});
      }
    }
  };
  check_costs(spec.storage_cost, "storage_cost");
  check_costs(spec.download_cost, "download_cost");

  if (norm.reconstruction_sets.empty()) {
    out.push_back({Severity::error, "at least one reconstruction set is required"});
  }
  for (std::size_t t = 0; t < norm.reconstruction_sets.size(); ++t) {
    check_node_set(norm.reconstruction_sets[t], n, "reconstruction set " + std::to_string(t), out);
  }
  for (std::size_t a = 0; a < norm.reconstruction_sets.size(); ++a) {
    for (std::size_t b = a + 1; b < norm.reconstruction_sets.size(); ++b) {
      if (!norm.reconstruction_sets[a].empty() &&
          norm.reconstruction_sets[a] == norm.reconstruction_sets[b]) {
        out.push_back({Severity::error, "reconstruction sets " + std::to_string(a) + " and " +
                                            std::to_string(b) + " are identical"});
      }
    }
  }

  if (norm.surviving_sets.size() != n) {
    out.push_back({Severity::error, "surviving_sets has " + std::to_string(norm.surviving_sets.size()) +
                                        " entries, expected one per node (" + std::to_string(n) + ")"});
  }

  report.surviving_set_map.resize(norm.surviving_sets.size());
  for (NodeIndex node = 0; node < norm.surviving_sets.size(); ++node) {
    auto& sets = norm.surviving_sets[node];
    if (sets.empty()) {
      out.push_back({Severity::error, "node " + std::to_string(node) + " has no surviving set"});
    }
    for (std::size_t l = 0; l < sets.size(); ++l) {
      const std::string where =
          "surviving set " + std::to_string(l) + " of node " + std::to_string(node);
      check_node_set(sets[l], n, where, out);
      if (std::binary_search(sets[l].begin(), sets[l].end(), node)) {
        out.push_back({Severity::error, where + " contains the node itself"});
      }
    }

    // A set is dropped when another kept set is contained in it. Among equal
    // sets the first one is kept, so a minimal set always survives.
    std::vector<bool> keep(sets.size(), true);
    for (std::size_t l = 0; l < sets.size(); ++l) {
      for (std::size_t m = 0; m < sets.size() && keep[l]; ++m) {
        if (m == l || sets[m].empty()) continue;
        bool strict = sets[m].size() < sets[l].size();
        bool earlier_duplicate = sets[m] == sets[l] && m < l;
        if ((strict || earlier_duplicate) &&
            std::includes(sets[l].begin(), sets[l].end(), sets[m].begin(), sets[m].end())) {
          keep[l] = false;
          out.push_back({Severity::warning,
                         "surviving set " + std::to_string(l) + " " + format_set(sets[l]) + " of node " +
                             std::to_string(node) + " contains surviving set " + std::to_string(m) + " " +
                             format_set(sets[m]) + "; pruned"});
        }
      }
    }
    std::vector<NodeSet> kept;
    for (std::size_t l = 0; l < sets.size(); ++l) {
      if (keep[l]) {
        report.surviving_set_map[node].push_back(kept.size());
        kept.push_back(sets[l]);
      } else {
        report.surviving_set_map[node].push_back(std::nullopt);
      }
    }
    sets = std::move(kept);
  }

  report.normalized = std::move(norm);
  return report;
}

DssSpec require_valid(const DssSpec& spec) {
  ValidationReport report = validate(spec);
  if (!report.ok()) throw InvalidSpec(report.errors());
  return std::move(report.normalized);
}

DerivedDegrees derive_degrees(const DssSpec& spec) {
  DerivedDegrees degrees;
  for (const auto& set : spec.reconstruction_sets) {
    degrees.reconstruction_degrees.push_back(set.size());
  }
  if (!degrees.reconstruction_degrees.empty()) {
    degrees.max_reconstruction_degree =
        *std::max_element(degrees.reconstruction_degrees.begin(), degrees.reconstruction_degrees.end());
    degrees.min_reconstruction_degree =
        *std::min_element(degrees.reconstruction_degrees.begin(), degrees.reconstruction_degrees.end());
  }
  for (const auto& sets : spec.surviving_sets) {
    std::size_t d = 0;
    for (const auto& set : sets) d = std::max(d, set.size());
    degrees.repair_degrees.push_back(d);
    degrees.max_repair_degree = std::max(degrees.max_repair_degree, d);
  }
  return degrees;
}

void check_assignment_shape(const DssSpec& spec, const Assignment& assignment) {
  if (assignment.alpha.size() != spec.node_count) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.alpha.size()) +
                                " storage amounts, expected " + std::to_string(spec.node_count));
  }
  const std::size_t slots = BetaLayout(spec).size();
  if (assignment.beta.size() != slots) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.beta.size()) +
                                " download amounts, expected " + std::to_string(slots));
  }
}

Fixture paper_fixture() {
  DssSpec spec;
  spec.node_count = 5;
  spec.file_size = 4;
  spec.storage_cost = {100, 10, 10, 10, 1};
  spec.download_cost = {10, 1, 1, 1, 1};
  spec.reconstruction_sets = {{0, 1, 2}, {0, 2, 4}, {0, 3}, {1, 3}, {1, 4}, {2, 3}, {3, 4}};
  spec.surviving_sets = {
      {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
      {{0, 3}, {2, 3}, {3, 4}},
      {{3}, {4}},
      {{1, 2}, {1, 4}},
      {{2}, {3}},
  };

  Assignment assignment = Assignment::zero(spec);
  assignment.alpha = {2, 2, 2, 3, 2};
  BetaLayout layout(spec);
  auto set_beta = [&](NodeIndex node, std::size_t set, NodeIndex helper, int amount) {
    assignment.beta[layout.index(node, set, helper)] = amount;
  };
  for (std::size_t l = 0; l < spec.surviving_sets[0].size(); ++l) {
    for (NodeIndex helper : spec.surviving_sets[0][l]) set_beta(0, l, helper, 1);
  }
  set_beta(1, 0, 0, 1);
  set_beta(1, 0, 3, 1);
  set_beta(1, 1, 2, 1);
  set_beta(1, 1, 3, 1);
  set_beta(1, 2, 3, 2);
  set_beta(1, 2, 4, 1);
  set_beta(2, 0, 3, 2);
  set_beta(2, 1, 4, 2);
  set_beta(3, 0, 1, 1);
  set_beta(3, 0, 2, 2);
  set_beta(3, 1, 1, 1);
  set_beta(3, 1, 4, 2);
  set_beta(4, 0, 2, 2);
  set_beta(4, 1, 3, 2);
  return {std::move(spec), std::move(assignment)};
}

}  // namespace hetdss
