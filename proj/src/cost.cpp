#include "hetdss/cost.hpp"

#include <stdexcept>
#include <string>

namespace hetdss {
namespace {

void require_positive_file_size(const DssSpec& spec) {
  if (spec.file_size <= 0) throw std::invalid_argument("file size must be positive");
}

}  // namespace

Rational storage_cost(const DssSpec& spec, const std::vector<Rational>& alpha) {
  require_positive_file_size(spec);
  if (alpha.size() != spec.node_count || spec.storage_cost.size() != spec.node_count) {
    throw std::invalid_argument("storage vector length does not match the node count");
  }
  Rational total = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j) total += spec.storage_cost[j] * alpha[j];
  return total / spec.file_size;
}

Rational node_repair_cost(const DssSpec& spec, const std::vector<Rational>& beta, NodeIndex node) {
  require_positive_file_size(spec);
  if (node >= spec.node_count) throw std::out_of_range("node " + std::to_string(node) + " out of range");
  const BetaLayout layout(spec);
  if (beta.size() != layout.size()) throw std::invalid_argument("download vector length does not match the spec");
  const auto& sets = spec.surviving_sets[node];
  if (sets.empty()) throw std::invalid_argument("node " + std::to_string(node) + " has no surviving set");

  Rational total = 0;
  for (std::size_t l = 0; l < sets.size(); ++l) {
    std::size_t slot = layout.offset(node, l);
    for (NodeIndex helper : sets[l]) total += spec.download_cost[helper] * beta[slot++];
  }
  return total / (spec.file_size * static_cast<long>(sets.size()));
}

Rational system_repair_cost(const DssSpec& spec, const std::vector<Rational>& beta) {
  Rational total = 0;
  for (NodeIndex i = 0; i < spec.node_count; ++i) total += node_repair_cost(spec, beta, i);
  return total;
}

CostReport cost_report(const DssSpec& spec, const Assignment& assignment) {
  check_assignment_shape(spec, assignment);
  CostReport report;
  report.storage_cost = storage_cost(spec, assignment.alpha);
  for (NodeIndex i = 0; i < spec.node_count; ++i) {
    report.node_repair.push_back(node_repair_cost(spec, assignment.beta, i));
    report.repair_cost += report.node_repair.back();
  }
  return report;
}

}  // namespace hetdss
