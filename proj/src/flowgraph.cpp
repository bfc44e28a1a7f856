#include "hetdss/flowgraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hetdss {

Capacity operator+(const Capacity& a, const Capacity& b) {
  if (a.is_infinite() || b.is_infinite()) return Capacity::infinite();
  return Capacity(a.value() + b.value());
}

Capacity operator-(const Capacity& a, const Rational& b) {
  if (a.is_infinite()) return a;
  return Capacity(a.value() - b);
}

bool operator==(const Capacity& a, const Capacity& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return a.value() == b.value();
}

std::strong_ordering operator<=>(const Capacity& a, const Capacity& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  if (a.value() < b.value()) return std::strong_ordering::less;
  if (b.value() < a.value()) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Capacity::to_string() const { return is_infinite() ? "inf" : hetdss::to_string(value()); }

Capacity min(const Capacity& a, const Capacity& b) { return b < a ? b : a; }

std::string Vertex::name() const {
  switch (role) {
    case VertexRole::source: return "s";
    case VertexRole::sink: return "D";
    case VertexRole::storage_in: return "In_" + std::to_string(node);
    case VertexRole::storage_out: return "Out_" + std::to_string(node);
    case VertexRole::repair_in: return "Inp_" + std::to_string(node) + "_" + std::to_string(step);
    case VertexRole::repair_out: return "Outp_" + std::to_string(node) + "_" + std::to_string(step);
  }
  return "?";
}

FlowGraph::FlowGraph(std::vector<Vertex> vertices, std::vector<FlowEdge> edges, std::size_t source,
                     std::size_t sink, RepairScenario scenario)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      source_(source),
      sink_(sink),
      scenario_(std::move(scenario)) {
  if (source_ >= vertices_.size() || sink_ >= vertices_.size() || source_ == sink_) {
    throw std::invalid_argument("flow graph needs distinct source and sink vertices");
  }
  for (const auto& e : edges_) {
    if (e.from >= vertices_.size() || e.to >= vertices_.size()) {
      throw std::invalid_argument("flow graph edge references a missing vertex");
    }
    if (!e.capacity.is_infinite() && e.capacity.value() < 0) {
      throw std::invalid_argument("flow graph edge has negative capacity");
    }
  }
}

std::optional<std::size_t> FlowGraph::find_vertex(const std::string& name) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].name() == name) return v;
  }
  return std::nullopt;
}

FlowGraph build_flow_graph(const DssSpec& spec, const Assignment& assignment,
                           const RepairScenario& scenario, const BuildOptions& options) {
  check_scenario(spec, scenario);
  check_assignment_shape(spec, assignment);
  const BetaLayout layout(spec);
  const std::size_t n = spec.node_count;
  const auto& nodes = scenario.sequence.nodes;

  std::vector<Vertex> vertices;
  std::vector<FlowEdge> edges;
  vertices.push_back({VertexRole::source, 0, 0});
  const std::size_t source = 0;
  for (NodeIndex i = 0; i < n; ++i) {
    vertices.push_back({VertexRole::storage_in, i, 0});
    vertices.push_back({VertexRole::storage_out, i, 0});
  }
  auto in_vertex = [](NodeIndex i) { return 1 + 2 * i; };
  auto out_vertex = [](NodeIndex i) { return 2 + 2 * i; };
  for (NodeIndex i = 0; i < n; ++i) {
    edges.push_back({source, in_vertex(i), Capacity::infinite()});
    edges.push_back({in_vertex(i), out_vertex(i),
                     options.bounded_initial_storage ? Capacity(assignment.alpha[i]) : Capacity::infinite()});
  }

  // repaired_out[i]: Outp vertex of node i once it has been regenerated.
  std::map<NodeIndex, std::size_t> repaired_out;
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    const NodeIndex u = nodes[p];
    const std::size_t set = scenario.choices[p];
    const std::size_t step = p + 1;
    const std::size_t in_prime = vertices.size();
    vertices.push_back({VertexRole::repair_in, u, step});
    const std::size_t out_prime = vertices.size();
    vertices.push_back({VertexRole::repair_out, u, step});

    for (NodeIndex helper : spec.surviving_sets[u][set]) {
      auto repaired = repaired_out.find(helper);
      const std::size_t from = repaired != repaired_out.end() ? repaired->second : out_vertex(helper);
      edges.push_back({from, in_prime, Capacity(assignment.beta[layout.index(u, set, helper)])});
    }
    edges.push_back({in_prime, out_prime, Capacity(assignment.alpha[u])});
    repaired_out[u] = out_prime;
  }

  const std::size_t sink = vertices.size();
  vertices.push_back({VertexRole::sink, 0, nodes.size() + 1});
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].role == VertexRole::repair_out) edges.push_back({v, sink, Capacity::infinite()});
  }
  return FlowGraph(std::move(vertices), std::move(edges), source, sink, scenario);
}

FlowResult compute_max_flow(const FlowGraph& graph) {
  const auto& edges = graph.edges();
  const std::size_t vertex_count = graph.vertices().size();

  // Residual arcs: (edge, forward?) per vertex.
  struct Arc {
    std::size_t edge;
    bool forward;
  };
  std::vector<std::vector<Arc>> adjacency(vertex_count);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adjacency[edges[e].from].push_back({e, true});
    adjacency[edges[e].to].push_back({e, false});
  }

  std::vector<Rational> flow(edges.size());
  auto residual = [&](const Arc& arc) -> Capacity {
    if (arc.forward) return edges[arc.edge].capacity - flow[arc.edge];
    return Capacity(flow[arc.edge]);
  };
  auto head = [&](const Arc& arc) { return arc.forward ? edges[arc.edge].to : edges[arc.edge].from; };

  Rational total = 0;
  std::vector<std::optional<Arc>> parent(vertex_count);
  std::vector<bool> seen(vertex_count);
  while (true) {
    std::fill(parent.begin(), parent.end(), std::nullopt);
    std::fill(seen.begin(), seen.end(), false);
    std::deque<std::size_t> queue{graph.source()};
    seen[graph.source()] = true;
    while (!queue.empty() && !seen[graph.sink()]) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (const Arc& arc : adjacency[v]) {
        const std::size_t w = head(arc);
        if (seen[w] || residual(arc) <= Capacity(Rational(0))) continue;
        seen[w] = true;
        parent[w] = arc;
        queue.push_back(w);
      }
    }
    if (!seen[graph.sink()]) {
      return FlowResult{total, std::move(flow), std::move(seen)};
    }

    Capacity bottleneck = Capacity::infinite();
    for (std::size_t v = graph.sink(); v != graph.source();) {
      const Arc& arc = *parent[v];
      bottleneck = min(bottleneck, residual(arc));
      v = arc.forward ? edges[arc.edge].from : edges[arc.edge].to;
    }
    if (bottleneck.is_infinite()) {
      throw std::logic_error("augmenting path of infinite capacity: the graph admits unbounded flow");
    }
    const Rational& delta = bottleneck.value();
    for (std::size_t v = graph.sink(); v != graph.source();) {
      const Arc& arc = *parent[v];
      if (arc.forward) {
        flow[arc.edge] += delta;
        v = edges[arc.edge].from;
      } else {
        flow[arc.edge] -= delta;
        v = edges[arc.edge].to;
      }
    }
    total += delta;
  }
}

Rational max_flow(const FlowGraph& graph) { return compute_max_flow(graph).value; }

CutValue evaluate_cut(const FlowGraph& graph, const std::vector<bool>& source_side) {
  if (source_side.size() != graph.vertices().size()) {
    throw std::invalid_argument("cut side vector does not match the vertex count");
  }
  CutValue cut;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    const bool from_x = source_side[edge.from];
    const bool to_x = source_side[edge.to];
    if (from_x == to_x) continue;
    cut.edge_set.push_back(e);
    if (from_x) cut.capacity = cut.capacity + edge.capacity;
  }
  cut.cardinality = cut.edge_set.size();
  return cut;
}

std::size_t min_cut_cardinality(const FlowGraph& graph, std::size_t max_free_vertices) {
  const std::size_t vertex_count = graph.vertices().size();
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < vertex_count; ++v) {
    if (v != graph.source() && v != graph.sink()) free.push_back(v);
  }
  if (free.size() > max_free_vertices || free.size() >= 63) {
    throw GraphTooLarge("exhaustive cut enumeration over " + std::to_string(free.size()) +
                        " vertices exceeds the limit of " + std::to_string(max_free_vertices));
  }

  std::vector<std::vector<std::size_t>> incident(vertex_count);
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    incident[graph.edges()[e].from].push_back(e);
    incident[graph.edges()[e].to].push_back(e);
  }

  std::vector<bool> side(vertex_count, false);
  side[graph.source()] = true;
  auto crossing = [&](std::size_t e) {
    return side[graph.edges()[e].from] != side[graph.edges()[e].to];
  };
  std::size_t count = 0;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) count += crossing(e) ? 1 : 0;

  std::size_t best = count > 0 ? count : SIZE_MAX;
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::size_t v = free[static_cast<std::size_t>(__builtin_ctzll(step))];
    for (std::size_t e : incident[v]) count -= crossing(e) ? 1 : 0;
    side[v] = !side[v];
    for (std::size_t e : incident[v]) count += crossing(e) ? 1 : 0;
    if (count > 0 && count < best) best = count;
  }
  if (best == SIZE_MAX) throw std::logic_error("no separating cut cuts any edge");
  return best;
}

std::string to_dot(const FlowGraph& graph) {
  std::ostringstream out;
  out << "digraph information_flow {\n  rankdir=LR;\n";
  std::map<std::size_t, std::vector<std::size_t>> ranks;
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    const auto& vertex = graph.vertices()[v];
    const std::size_t rank = vertex.role == VertexRole::source ? 0 : vertex.step + 1;
    ranks[rank].push_back(v);
  }
  for (const auto& [rank, members] : ranks) {
    out << "  { rank=same;";
    for (std::size_t v : members) out << " \"" << graph.vertices()[v].name() << "\";";
    out << " }\n";
  }
  for (const auto& edge : graph.edges()) {
    out << "  \"" << graph.vertices()[edge.from].name() << "\" -> \"" << graph.vertices()[edge.to].name()
        << "\" [label=\"" << edge.capacity.to_string() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace hetdss
