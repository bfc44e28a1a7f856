#pragma once

// Information flow graph of one repair scenario and exact max-flow on it.
//
// Layout for a scenario over reconstruction set A_t with k = |A_t|:
//
//   s --inf--> In_i --alpha_i--> Out_i                  every node i (step 0)
//   helper --beta--> Inp_u_j --alpha_u--> Outp_u_j --inf--> D
//
// where u is the node repaired at step j (1..k) and `helper` is Outp of that
// helper if it was repaired at an earlier step, otherwise its step-0 Out.

#include "hetdss/enumeration.hpp"
#include "hetdss/model.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace hetdss {

/// Edge capacity: a nonnegative rational or infinity. Infinity is absorbing
/// under addition and compares above every finite value.
class Capacity {
 public:
  Capacity() = default;
  Capacity(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)

  static Capacity infinite() {
    Capacity c;
    c.value_.reset();
    return c;
  }

  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: finite.
  const Rational& value() const { return *value_; }

  friend Capacity operator+(const Capacity& a, const Capacity& b);
  friend Capacity operator-(const Capacity& a, const Rational& b);
  friend bool operator==(const Capacity& a, const Capacity& b);
  friend std::strong_ordering operator<=>(const Capacity& a, const Capacity& b);

  std::string to_string() const;

 private:
  std::optional<Rational> value_ = Rational(0);
};

Capacity min(const Capacity& a, const Capacity& b);

enum class VertexRole { source, sink, storage_in, storage_out, repair_in, repair_out };

struct Vertex {
  VertexRole role = VertexRole::source;
  NodeIndex node = 0;
  /// 0 for the initial nodes, 1..k for repaired ones.
  std::size_t step = 0;

  /// `s`, `D`, `In_i`, `Out_i`, `Inp_i_j`, `Outp_i_j`.
  std::string name() const;
};

struct FlowEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Capacity capacity;
};

class FlowGraph {
 public:
  FlowGraph(std::vector<Vertex> vertices, std::vector<FlowEdge> edges, std::size_t source,
            std::size_t sink, RepairScenario scenario);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<FlowEdge>& edges() const { return edges_; }
  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }
  /// The scenario this graph was built from.
  const RepairScenario& scenario() const { return scenario_; }

  std::optional<std::size_t> find_vertex(const std::string& name) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<FlowEdge> edges_;
  std::size_t source_;
  std::size_t sink_;
  RepairScenario scenario_;
};

struct BuildOptions {
  /// When false, the step-0 In_i -> Out_i edges are infinite instead of
  /// alpha_i: the initial nodes then never act as a bottleneck, which is the
  /// cut structure the closed-form scenario term describes.
  bool bounded_initial_storage = true;
};

FlowGraph build_flow_graph(const DssSpec& spec, const Assignment& assignment,
                           const RepairScenario& scenario, const BuildOptions& options = {});

struct FlowResult {
  Rational value;
  std::vector<Rational> edge_flow;  // one entry per edge of the graph
  /// Vertices reachable from the source in the final residual graph.
  std::vector<bool> source_side;
};

/// Edmonds-Karp on exact rationals. Throws std::logic_error if an augmenting
/// path has unbounded residual capacity.
FlowResult compute_max_flow(const FlowGraph& graph);

Rational max_flow(const FlowGraph& graph);

struct CutValue {
  Capacity capacity;                    // sum over edges leaving the source side
  std::vector<std::size_t> edge_set;    // edges with one end on each side
  std::size_t cardinality = 0;          // edge_set.size()
};

/// `source_side[v]` is true when v lies with the source.
CutValue evaluate_cut(const FlowGraph& graph, const std::vector<bool>& source_side);

class GraphTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Smallest number of edges with one end on each side, over every vertex
/// bipartition that separates s from D and cuts at least one edge.
/// Exhaustive (Gray-code order); throws GraphTooLarge when more than
/// `max_free_vertices` vertices besides s and D would have to be enumerated.
std::size_t min_cut_cardinality(const FlowGraph& graph, std::size_t max_free_vertices = 24);

/// Graphviz rendering; one rank per step label, edge labels are capacities
/// with `inf` for infinity.
std::string to_dot(const FlowGraph& graph);

}  // namespace hetdss
