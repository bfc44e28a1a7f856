#pragma once

// Node sequences and repair scenarios over which the min-cut bound minimizes.
//
// A node sequence is one ordering of a reconstruction set (the order in
// which its members fail and get repaired). A repair scenario pairs a node
// sequence with one surviving-set choice per position. Both streams are
// lazy and lexicographic; each holds O(sequence length) state and no
// reference to the spec.
//
// The number of scenarios of a sequence is the plain product of the tau
// values of its nodes, which agrees with the flow-graph count
//   sum_t |A_t|! * prod_j tau_j.

#include "hetdss/model.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hetdss {

struct NodeSequence {
  std::size_t set_index = 0;
  std::vector<NodeIndex> nodes;

  friend bool operator==(const NodeSequence&, const NodeSequence&) = default;
  friend auto operator<=>(const NodeSequence&, const NodeSequence&) = default;
};

struct RepairScenario {
  NodeSequence sequence;
  /// choices[p] selects surviving set S_{nodes[p]}^(choices[p]).
  std::vector<std::size_t> choices;

  friend bool operator==(const RepairScenario&, const RepairScenario&) = default;
  friend auto operator<=>(const RepairScenario&, const RepairScenario&) = default;
};

class CountOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// All orderings of reconstruction set `set_index`, lexicographic.
class NodeSequenceStream {
 public:
  NodeSequenceStream(const DssSpec& spec, std::size_t set_index);

  std::optional<NodeSequence> next();

 private:
  std::size_t set_index_;
  std::vector<NodeIndex> current_;
  bool done_ = false;
};

/// Cartesian product of surviving-set choices for one sequence; the last
/// position varies fastest.
class ScenarioStream {
 public:
  ScenarioStream(const DssSpec& spec, NodeSequence sequence);

  std::optional<RepairScenario> next();

 private:
  NodeSequence sequence_;
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> current_;
  bool done_ = false;
};

std::uint64_t node_sequence_count(const DssSpec& spec, std::size_t set_index);
std::uint64_t scenario_count(const DssSpec& spec, const NodeSequence& sequence);

/// sum over reconstruction sets of |A_t|! * prod tau. Throws CountOverflow.
std::uint64_t flow_graph_count(const DssSpec& spec);

/// Visits every scenario of every reconstruction set in enumeration order.
template <class Visitor>
void for_each_scenario(const DssSpec& spec, Visitor&& visit) {
  for (std::size_t t = 0; t < spec.reconstruction_sets.size(); ++t) {
    NodeSequenceStream sequences(spec, t);
    while (auto sequence = sequences.next()) {
      ScenarioStream scenarios(spec, std::move(*sequence));
      while (auto scenario = scenarios.next()) visit(*scenario);
    }
  }
}

/// Checks that `scenario` refers to an existing set, a valid ordering of it,
/// and in-range surviving-set choices. Throws std::invalid_argument.
void check_scenario(const DssSpec& spec, const RepairScenario& scenario);

}  // namespace hetdss
