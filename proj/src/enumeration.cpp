#include "hetdss/enumeration.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace hetdss {
namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw CountOverflow("flow graph count overflows 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw CountOverflow("flow graph count overflows 64 bits");
  return out;
}

}  // namespace

NodeSequenceStream::NodeSequenceStream(const DssSpec& spec, std::size_t set_index)
    : set_index_(set_index), current_(spec.reconstruction_sets.at(set_index)) {
  std::sort(current_.begin(), current_.end());
}

std::optional<NodeSequence> NodeSequenceStream::next() {
  if (done_) return std::nullopt;
  NodeSequence out{set_index_, current_};
  done_ = !std::next_permutation(current_.begin(), current_.end());
  return out;
}

ScenarioStream::ScenarioStream(const DssSpec& spec, NodeSequence sequence)
    : sequence_(std::move(sequence)) {
  for (NodeIndex node : sequence_.nodes) radix_.push_back(spec.surviving_sets.at(node).size());
  current_.assign(radix_.size(), 0);
  done_ = std::any_of(radix_.begin(), radix_.end(), [](std::size_t r) { return r == 0; });
}

std::optional<RepairScenario> ScenarioStream::next() {
  if (done_) return std::nullopt;
  RepairScenario out{sequence_, current_};
  std::size_t pos = current_.size();
  while (pos > 0) {
    --pos;
    if (++current_[pos] < radix_[pos]) return out;
    current_[pos] = 0;
  }
  done_ = true;
  return out;
}

std::uint64_t node_sequence_count(const DssSpec& spec, std::size_t set_index) {
  std::uint64_t count = 1;
  for (std::size_t i = 2; i <= spec.reconstruction_sets.at(set_index).size(); ++i) {
    count = checked_mul(count, i);
  }
  return count;
}

std::uint64_t scenario_count(const DssSpec& spec, const NodeSequence& sequence) {
  std::uint64_t count = 1;
  for (NodeIndex node : sequence.nodes) count = checked_mul(count, spec.surviving_sets.at(node).size());
  return count;
}

std::uint64_t flow_graph_count(const DssSpec& spec) {
  std::uint64_t total = 0;
  for (std::size_t t = 0; t < spec.reconstruction_sets.size(); ++t) {
    std::uint64_t per_set = node_sequence_count(spec, t);
    // The product of tau does not depend on the order of the sequence.
    for (NodeIndex node : spec.reconstruction_sets[t]) {
      per_set = checked_mul(per_set, spec.surviving_sets.at(node).size());
    }
    total = checked_add(total, per_set);
  }
  return total;
}

void check_scenario(const DssSpec& spec, const RepairScenario& scenario) {
  const auto& seq = scenario.sequence;
  if (seq.set_index >= spec.reconstruction_sets.size()) {
    throw std::invalid_argument("reconstruction set index " + std::to_string(seq.set_index) +
                                " out of range (have " +
                                std::to_string(spec.reconstruction_sets.size()) + ")");
  }
  NodeSet sorted = seq.nodes;
  std::sort(sorted.begin(), sorted.end());
  NodeSet expected = spec.reconstruction_sets[seq.set_index];
  std::sort(expected.begin(), expected.end());
  if (sorted != expected) {
    throw std::invalid_argument("node sequence is not an ordering of reconstruction set " +
                                std::to_string(seq.set_index));
  }
  if (scenario.choices.size() != seq.nodes.size()) {
    throw std::invalid_argument("expected " + std::to_string(seq.nodes.size()) +
                                " surviving-set choices, got " + std::to_string(scenario.choices.size()));
  }
  for (std::size_t p = 0; p < seq.nodes.size(); ++p) {
    const std::size_t tau = spec.surviving_sets.at(seq.nodes[p]).size();
    if (scenario.choices[p] >= tau) {
      throw std::invalid_argument("surviving-set choice " + std::to_string(scenario.choices[p]) +
                                  " for node " + std::to_string(seq.nodes[p]) + " out of range (tau = " +
                                  std::to_string(tau) + ")");
    }
  }
}

}  // namespace hetdss
