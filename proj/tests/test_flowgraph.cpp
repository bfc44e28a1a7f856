#include "hetdss/bound.hpp"
#include "hetdss/flowgraph.hpp"
#include "support/oracles.hpp"
#include "support/random_spec.hpp"

#include <gtest/gtest.h>

using namespace hetdss;

namespace {

const RepairScenario kWorked{NodeSequence{0, {0, 1, 2}}, {0, 0, 0}};

std::vector<hetdss::testing::RandomInstance> instances(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<hetdss::testing::RandomInstance> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(hetdss::testing::random_instance(rng));
  return out;
}

}  // namespace

TEST(Capacity, InfinityAbsorbsAndDominates) {
  const Capacity inf = Capacity::infinite();
  EXPECT_TRUE((inf + Capacity(Rational(3))).is_infinite());
  EXPECT_TRUE((inf - Rational(3)).is_infinite());
  EXPECT_LT(Capacity(Rational(1000)), inf);
  EXPECT_EQ(min(inf, Capacity(Rational(2))), Capacity(Rational(2)));
  EXPECT_EQ(inf.to_string(), "inf");
  EXPECT_EQ(Capacity(Rational(3, 2)).to_string(), "3/2");
}

TEST(FlowGraph, WorkedScenarioTopology) {
  const Fixture f = paper_fixture();
  const FlowGraph g = build_flow_graph(f.spec, f.assignment, kWorked);
  EXPECT_EQ(g.vertices().size(), 2U + 10U + 6U);
  EXPECT_EQ(g.edges().size(), 21U);
  EXPECT_EQ(g.vertices()[g.source()].name(), "s");
  EXPECT_EQ(g.vertices()[g.sink()].name(), "D");
  for (const char* name : {"In_3", "Out_3", "Inp_0_1", "Outp_1_2", "Outp_2_3"}) {
    EXPECT_TRUE(g.find_vertex(name).has_value()) << name;
  }
  // node 1 repaired second takes its helper 0 from the repaired copy
  bool from_repaired = false;
  for (const auto& e : g.edges()) {
    if (g.vertices()[e.from].name() == "Outp_0_1" && g.vertices()[e.to].name() == "Inp_1_2") {
      from_repaired = e.capacity == Capacity(Rational(1));
    }
  }
  EXPECT_TRUE(from_repaired);
  EXPECT_EQ(g.scenario(), kWorked);
}

TEST(FlowGraph, WorkedScenarioFlowValues) {
  const Fixture f = paper_fixture();
  EXPECT_EQ(scenario_term(f.spec, f.assignment, kWorked), 5);
  // helper 3 stores 3 but is asked for 1 + 1 + 2
  EXPECT_EQ(max_flow(build_flow_graph(f.spec, f.assignment, kWorked)), 4);
  EXPECT_EQ(max_flow(build_flow_graph(f.spec, f.assignment, kWorked, {false})), 5);
}

TEST(FlowGraph, FlowIsFeasibleAndCutCertifiesIt) {
  for (const auto& [spec, a] : instances(8, 11)) {
    for_each_scenario(spec, [&](const RepairScenario& sc) {
      const FlowGraph g = build_flow_graph(spec, a, sc);
      const FlowResult r = compute_max_flow(g);
      std::vector<Rational> balance(g.vertices().size());
      for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const auto& edge = g.edges()[e];
        ASSERT_GE(r.edge_flow[e], 0);
        if (!edge.capacity.is_infinite()) ASSERT_LE(r.edge_flow[e], edge.capacity.value());
        balance[edge.from] -= r.edge_flow[e];
        balance[edge.to] += r.edge_flow[e];
      }
      for (std::size_t v = 0; v < balance.size(); ++v) {
        if (v != g.source() && v != g.sink()) ASSERT_EQ(balance[v], 0);
      }
      ASSERT_EQ(balance[g.sink()], r.value);
      const CutValue cut = evaluate_cut(g, r.source_side);
      ASSERT_EQ(cut.capacity, Capacity(r.value));
    });
  }
}

TEST(FlowGraph, MaxFlowMatchesBruteForceMinCut) {
  std::size_t checked = 0;
  for (const auto& [spec, a] : instances(6, 12)) {
    for_each_scenario(spec, [&](const RepairScenario& sc) {
      if (checked > 150) return;
      const FlowGraph g = build_flow_graph(spec, a, sc);
      ASSERT_EQ(Capacity(max_flow(g)), hetdss::testing::brute_force_min_cut(g));
      ++checked;
    });
  }
  EXPECT_GT(checked, 20U);
}

TEST(FlowGraph, ClosedFormTermEqualsFlowWithUnlimitedInitialStorage) {
  for (const auto& [spec, a] : instances(15, 13)) {
    for_each_scenario(spec, [&](const RepairScenario& sc) {
      const Rational term = scenario_term(spec, a, sc);
      ASSERT_EQ(max_flow(build_flow_graph(spec, a, sc, {false})), term);
      ASSERT_LE(max_flow(build_flow_graph(spec, a, sc)), term);
    });
  }
}

TEST(FlowGraph, CutCardinality) {
  const Fixture f = paper_fixture();
  // {Out_3, every repaired vertex, D} against the rest cuts only In_3 -> Out_3
  // for the sequence <2,4,0> through {3}, {3}, {3,4}.
  const RepairScenario sc{NodeSequence{1, {2, 4, 0}}, {0, 1, 4}};
  const FlowGraph g = build_flow_graph(f.spec, f.assignment, sc);
  std::vector<bool> side(g.vertices().size(), true);
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    const auto role = g.vertices()[v].role;
    if (role == VertexRole::repair_in || role == VertexRole::repair_out || role == VertexRole::sink) side[v] = false;
  }
  side[*g.find_vertex("Out_3")] = false;
  EXPECT_EQ(evaluate_cut(g, side).cardinality, 1U);
  EXPECT_EQ(min_cut_cardinality(g), 1U);
  EXPECT_THROW(min_cut_cardinality(g, 4), GraphTooLarge);
}

TEST(FlowGraph, SingleNodeReconstructionIsMinimal) {
  DssSpec spec;
  spec.node_count = 2;
  spec.file_size = 1;
  spec.storage_cost = {1, 1};
  spec.download_cost = {1, 1};
  spec.reconstruction_sets = {{0}};
  spec.surviving_sets = {{{1}}, {{0}}};
  const Assignment a{{2, 3}, {Rational(1, 2), 1}};
  const FlowGraph g = build_flow_graph(spec, a, {{0, {0}}, {0}});
  EXPECT_EQ(g.vertices().size(), 2U + 4U + 2U);
  EXPECT_EQ(max_flow(g), Rational(1, 2));
  EXPECT_EQ(min_cut_cardinality(g), 1U);
}

TEST(FlowGraph, DotIsStable) {
  const Fixture f = paper_fixture();
  const FlowGraph g = build_flow_graph(f.spec, f.assignment, kWorked);
  const std::string dot = to_dot(g);
  EXPECT_EQ(dot, to_dot(build_flow_graph(f.spec, f.assignment, kWorked)));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("\"s\" -> \"In_0\" [label=\"inf\"]"), std::string::npos);
  EXPECT_NE(dot.find("\"In_3\" -> \"Out_3\" [label=\"3\"]"), std::string::npos);
  EXPECT_NE(dot.find("\"Outp_2_3\" -> \"D\""), std::string::npos);
}
