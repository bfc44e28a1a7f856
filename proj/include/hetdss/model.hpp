#pragma once

// Domain types for a heterogeneous distributed storage system (DSS).
//
// Nodes are indexed 0..n-1. A reconstruction set is a group of nodes from
// which a data collector can rebuild the file; a surviving set of node i is a
// group of helpers able to repair i. All node sets are kept sorted and free
// of duplicates once a spec has been through validate().

#include "hetdss/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetdss {

using NodeIndex = std::size_t;
using NodeSet = std::vector<NodeIndex>;

struct DssSpec {
  std::size_t node_count = 0;
  Rational file_size;
  std::vector<Rational> storage_cost;
  std::vector<Rational> download_cost;
  std::vector<NodeSet> reconstruction_sets;
  /// surviving_sets[i][l] is the l-th helper set of node i.
  std::vector<std::vector<NodeSet>> surviving_sets;

  std::size_t surviving_set_count(NodeIndex node) const { return surviving_sets[node].size(); }

  friend bool operator==(const DssSpec&, const DssSpec&) = default;
};

struct DerivedDegrees {
  std::vector<std::size_t> reconstruction_degrees;  // k_t = |A_t|
  std::size_t max_reconstruction_degree = 0;        // k
  std::size_t min_reconstruction_degree = 0;        // k_min
  std::vector<std::size_t> repair_degrees;          // d_i = max_l |S_i^(l)|
  std::size_t max_repair_degree = 0;                // d

  friend bool operator==(const DerivedDegrees&, const DerivedDegrees&) = default;
};

/// Identifies one download amount: helper `helper` sending data to repair
/// `node` through its surviving set number `set`.
struct BetaSlot {
  NodeIndex node = 0;
  std::size_t set = 0;
  NodeIndex helper = 0;

  friend bool operator==(const BetaSlot&, const BetaSlot&) = default;
};

/// Flat, canonical ordering of every (node, set, helper) triple of a spec:
/// node ascending, then set, then helper ascending.
class BetaLayout {
 public:
  explicit BetaLayout(const DssSpec& spec);

  std::size_t size() const { return slots_.size(); }
  const std::vector<BetaSlot>& slots() const { return slots_; }

  /// Index of the first slot belonging to S_node^(set).
  std::size_t offset(NodeIndex node, std::size_t set) const { return offsets_[node][set]; }

  /// Throws std::out_of_range if `helper` is not a member of S_node^(set).
  std::size_t index(NodeIndex node, std::size_t set, NodeIndex helper) const;

  std::optional<std::size_t> find(NodeIndex node, std::size_t set, NodeIndex helper) const;

 private:
  std::vector<BetaSlot> slots_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::vector<NodeSet>> sets_;
};

/// A concrete operating point: storage per node and download amount per slot.
struct Assignment {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;  // indexed by BetaLayout order

  static Assignment zero(const DssSpec& spec);

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;
  /// Sorted, de-duplicated and superset-pruned copy of the input.
  DssSpec normalized;
  /// surviving_set_map[i][l]: index in `normalized` of the input's S_i^(l),
  /// or nullopt when that set was pruned.
  std::vector<std::vector<std::optional<std::size_t>>> surviving_set_map;

  bool ok() const;
  std::vector<std::string> errors() const;
  std::vector<std::string> warnings() const;
};

class InvalidSpec : public std::runtime_error {
 public:
  explicit InvalidSpec(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

ValidationReport validate(const DssSpec& spec);

/// validate() and return the normalized spec, or throw InvalidSpec.
DssSpec require_valid(const DssSpec& spec);

DerivedDegrees derive_degrees(const DssSpec& spec);

/// Throws std::invalid_argument when the vectors do not match the spec's shape.
void check_assignment_shape(const DssSpec& spec, const Assignment& assignment);

struct Fixture {
  DssSpec spec;
  Assignment assignment;
};

/// Five-node worked example: B = 4, alpha = (2, 2, 2, 3, 2), seven
/// reconstruction sets, the surviving-set table, storage costs
/// (100, 10, 10, 10, 1) and download costs (10, 1, 1, 1, 1).
///
/// Only three download amounts are pinned by the example itself (4<-5 and
/// 4<-2 through S_4^(2), 5<-4 through S_5^(2)); the remaining ones are a
/// completion that reproduces the published node repair costs
/// (1/2, 4/3, 1/2, 3/4, 1/2).
Fixture paper_fixture();

}  // namespace hetdss
