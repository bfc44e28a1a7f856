// Acceptance checks, one per criterion. Usage: acceptance [--criterion N]
// Prints one PASS/FAIL line per criterion; exit status is nonzero if any
// selected criterion fails.

#include "hetdss/bound.hpp"
#include "hetdss/cost.hpp"
#include "hetdss/flowgraph.hpp"
#include "hetdss/lp.hpp"
#include "hetdss/optimizer.hpp"
#include "hetdss/specfile.hpp"
#include "support/oracles.hpp"
#include "support/random_spec.hpp"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace hetdss;

namespace {

constexpr double kTol = 1e-9;
constexpr std::uint64_t kSeed = 0x5eed2024;
constexpr std::size_t kRandomSpecs = 20;
constexpr std::size_t kLinearizationSamples = 50;
constexpr std::size_t kRandomPrograms = 200;

const std::string kData = HETDSS_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string join(const std::vector<Rational>& values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) text += (i ? "," : "") + to_string(values[i]);
  return "(" + text + ")";
}

bool close(const Rational& a, const Rational& b) {
  return to_double(abs(Rational(a - b))) <= kTol * std::max(1.0, to_double(abs(b)));
}

// fig2 fixture first, then the random specs; all with their operating point.
std::vector<testing::RandomInstance> tightness_instances() {
  std::vector<testing::RandomInstance> out;
  const SpecDocument doc = load_spec(kData + "/fig2.json");
  out.push_back({doc.spec, *doc.assignment});
  std::mt19937_64 rng(kSeed);
  for (std::size_t i = 0; i < kRandomSpecs; ++i) out.push_back(testing::random_instance(rng));
  return out;
}

Outcome criterion_1() {
  const SpecDocument doc = load_spec(kData + "/fig2.json");
  const CostReport r = cost_report(doc.spec, *doc.assignment);
  const std::vector<Rational> expected_nodes = {Rational(1, 2), Rational(4, 3), Rational(1, 2), Rational(3, 4),
                                                Rational(1, 2)};
  const bool pass = r.storage_cost == 68 && r.node_repair == expected_nodes && r.repair_cost == Rational(43, 12);
  return {pass, "C_s=" + to_string(r.storage_cost) + " r(beta)=" + join(r.node_repair) +
                    " C_r=" + to_string(r.repair_cost) + " (expected 68, (1/2,4/3,1/2,3/4,1/2), 43/12)"};
}

Outcome criterion_2() {
  const SpecDocument doc = load_spec(kData + "/fig2.json");
  const RepairScenario scenario{NodeSequence{0, {0, 1, 2}}, {0, 0, 0}};
  const Rational term = scenario_term(doc.spec, *doc.assignment, scenario);
  const Rational flow = max_flow(build_flow_graph(doc.spec, *doc.assignment, scenario));
  const Rational relaxed = max_flow(build_flow_graph(doc.spec, *doc.assignment, scenario, {false}));
  const bool pass = term == 5 && flow == 5;
  return {pass, "closed form=" + to_string(term) + " max-flow=" + to_string(flow) +
                    " (expected 5 for both; with unlimited step-0 storage the max-flow is " + to_string(relaxed) +
                    ")"};
}

Outcome criterion_3() {
  std::size_t mismatches = 0;
  std::size_t graphs = 0;
  std::string first;
  const auto instances = tightness_instances();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& [spec, a] = instances[i];
    const Rational q = q_bound(spec, a).q;
    std::optional<Rational> flow_min;
    for_each_scenario(spec, [&](const RepairScenario& sc) {
      const Rational f = max_flow(build_flow_graph(spec, a, sc));
      if (!flow_min || f < *flow_min) flow_min = f;
      ++graphs;
    });
    if (*flow_min != q) {
      ++mismatches;
      if (first.empty()) {
        first = " first at instance " + std::to_string(i) + ": Q=" + to_string(q) +
                " min max-flow=" + to_string(*flow_min);
      }
    }
  }

  // Homogeneous cross-check: a uniform point on the materialized k/d system.
  std::size_t homogeneous_mismatches = 0;
  std::mt19937_64 rng(kSeed + 3);
  for (std::size_t n = 3; n <= 5; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t d = 1; d < n; ++d) {
        DssSpec base;
        base.node_count = n;
        base.file_size = 1;
        base.storage_cost.assign(n, Rational(1));
        base.download_cost.assign(n, Rational(1));
        base.reconstruction_sets = {{0}};
        base.surviving_sets.assign(n, {});
        for (NodeIndex j = 0; j < n; ++j) base.surviving_sets[j] = {{j == 0 ? NodeIndex{1} : NodeIndex{0}}};
        ProblemConfig config;
        config.mode = Mode::homogeneous;
        config.k = k;
        config.d = d;
        const DssSpec m = materialize(base, config);
        const Rational alpha = testing::random_amount(rng);
        const Rational beta = testing::random_amount(rng);
        Assignment a = Assignment::zero(m);
        std::fill(a.alpha.begin(), a.alpha.end(), alpha);
        std::fill(a.beta.begin(), a.beta.end(), beta);
        if (q_bound(m, a).q != homogeneous_term(alpha, beta, k, d)) ++homogeneous_mismatches;
      }
    }
  }

  const bool pass = mismatches == 0 && homogeneous_mismatches == 0;
  return {pass, std::to_string(instances.size()) + " instances, " + std::to_string(graphs) +
                    " flow graphs: Q != min max-flow on " + std::to_string(mismatches) + first +
                    "; homogeneous cross-check mismatches: " + std::to_string(homogeneous_mismatches)};
}

Outcome criterion_4() {
  std::size_t mismatches = 0;
  const auto instances = tightness_instances();
  for (const auto& [spec, a] : instances) {
    if (q_bound(spec, a).q != q_bound_exchanged(spec, a)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(instances.size()) + " instances, " + std::to_string(mismatches) +
                               " where q_bound != q_bound_exchanged"};
}

Outcome criterion_5() {
  std::size_t graphs = 0;
  std::size_t violations = 0;
  std::string first;
  const auto instances = tightness_instances();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& [spec, a] = instances[i];
    const std::size_t k_min = derive_degrees(spec).min_reconstruction_degree;
    for_each_scenario(spec, [&](const RepairScenario& sc) {
      const std::size_t cardinality = min_cut_cardinality(build_flow_graph(spec, a, sc));
      ++graphs;
      if (cardinality < k_min) {
        ++violations;
        if (first.empty()) {
          std::ostringstream where;
          where << " first at instance " << i << ", set " << sc.sequence.set_index << ", sequence <";
          for (std::size_t p = 0; p < sc.sequence.nodes.size(); ++p) where << (p ? "," : "") << sc.sequence.nodes[p];
          where << ">, choices <";
          for (std::size_t p = 0; p < sc.choices.size(); ++p) where << (p ? "," : "") << sc.choices[p];
          where << ">: cardinality " << cardinality << " < k_min " << k_min;
          first = where.str();
        }
      }
    });
  }
  return {violations == 0, std::to_string(graphs) + " flow graphs, " + std::to_string(violations) +
                               " with min cut cardinality below k_min;" + first};
}

Outcome criterion_6() {
  std::mt19937_64 rng(kSeed + 6);
  std::size_t disagreements = 0;
  std::size_t feasible = 0;
  for (std::size_t i = 0; i < kLinearizationSamples; ++i) {
    testing::RandomInstance inst = testing::random_instance(rng);
    const Rational q = q_bound(inst.spec, inst.assignment).q;
    // Put B below, on and above Q so both sides of the equivalence occur.
    static const Rational factors[] = {Rational(1, 2), Rational(1), Rational(3, 2)};
    inst.spec.file_size = q > 0 ? q * factors[i % 3] : Rational(1, 2);
    ProblemConfig config;
    config.weights = {1.0};
    const DssLinearProgram model = build_lp(inst.spec, config, Rational(1));
    const bool lp_feasible = is_feasible_point(model, inst.assignment, kTol);
    const bool fits = inst.spec.file_size <= q;
    feasible += fits ? 1 : 0;
    if (lp_feasible != fits) ++disagreements;
  }
  return {disagreements == 0, std::to_string(kLinearizationSamples) + " samples (" + std::to_string(feasible) +
                                  " with B <= Q), " + std::to_string(disagreements) + " disagreements"};
}

Outcome criterion_7() {
  const SpecDocument doc = load_spec(kData + "/fig5_hetero.json");
  ProblemConfig general;
  general.weights = log_grid(1e-3, 1e3, 10);
  ProblemConfig homogeneous = general;
  homogeneous.mode = Mode::homogeneous;
  homogeneous.k = 2;
  homogeneous.d = 3;
  const SweepResult g = sweep(doc.spec, general);
  const SweepResult h = sweep(doc.spec, homogeneous);

  std::size_t feasible = 0;
  for (const auto& o : g.outcomes) {
    if (o.point && to_double(o.point->q) >= to_double(doc.spec.file_size) - kTol) ++feasible;
  }
  const auto front = pareto_filter(g.points());
  bool monotone = !front.empty();
  for (std::size_t i = 1; i < front.size(); ++i) {
    monotone = monotone && front[i].storage_cost > front[i - 1].storage_cost &&
               front[i].repair_cost < front[i - 1].repair_cost;
  }
  std::size_t dominated = 0;
  std::string first;
  for (std::size_t i = 0; i < g.outcomes.size(); ++i) {
    const auto& gp = g.outcomes[i].point;
    const auto& hp = h.outcomes[i].point;
    if (!gp || !hp || to_double(gp->objective) > to_double(hp->objective) + kTol) {
      ++dominated;
      if (first.empty()) first = " first at lambda " + std::to_string(g.outcomes[i].lambda);
    }
  }
  const bool pass = feasible == 10 && g.outcomes.size() == 10 && monotone && dominated == 0;
  std::ostringstream detail;
  detail << feasible << "/10 feasible points, " << front.size() << " on the filtered front ("
         << (monotone ? "strictly monotone" : "NOT monotone") << "), general > homogeneous at " << dominated
         << " weights" << first;
  if (!g.outcomes.empty() && g.outcomes.front().point && h.outcomes.front().point) {
    detail << "; at lambda=1e-3 general " << to_decimal_string(g.outcomes.front().point->objective)
           << " vs homogeneous " << to_decimal_string(h.outcomes.front().point->objective);
  }
  return {pass, detail.str()};
}

Outcome criterion_8() {
  const Rational alpha(1, 2);
  const Rational beta(1, 4);
  const Rational term = homogeneous_term(alpha, beta, 2, 3);

  SpecDocument doc = load_spec(kData + "/fig5_hetero.json");
  doc.spec.file_size = 1;
  ProblemConfig config;
  config.mode = Mode::homogeneous;
  config.k = 2;
  config.d = 3;
  const DssLinearProgram model = build_lp(doc.spec, config, Rational(1));
  Assignment a = Assignment::zero(model.spec);
  std::fill(a.alpha.begin(), a.alpha.end(), alpha);
  std::fill(a.beta.begin(), a.beta.end(), beta);
  const bool feasible = is_feasible_point(model, a, kTol);
  const bool pass = term == 1 && feasible;
  return {pass, "sum min{alpha,(d-i+1)beta} = " + to_string(term) + " at (1/2, 1/4), LP point " +
                    (feasible ? "feasible" : "infeasible") + " (expected 1, feasible)"};
}

lp::LinearProgram random_program(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  lp::LinearProgram p;
  const int n = pick(1, 4);
  const int m = pick(1, 6);
  for (int j = 0; j < n; ++j) p.add_variable("x" + std::to_string(j), Rational(pick(-3, 3)));
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (int j = 0; j < n; ++j) terms.emplace_back(j, Rational(pick(-3, 3)));
    const int r = pick(0, 5);
    const lp::Relation rel = r < 3 ? lp::Relation::less_equal
                                   : (r < 5 ? lp::Relation::greater_equal : lp::Relation::equal);
    p.add_constraint(terms, rel, Rational(pick(-4, 6)));
  }
  return p;
}

Outcome criterion_9() {
  std::mt19937_64 rng(kSeed + 9);
  std::size_t wrong = 0;
  std::size_t counts[3] = {0, 0, 0};
  std::string first;
  for (std::size_t i = 0; i < kRandomPrograms; ++i) {
    const lp::LinearProgram p = random_program(rng);
    const testing::VertexOracle oracle = testing::vertex_enumeration(p);
    counts[oracle.status == lp::Status::optimal ? 0 : oracle.status == lp::Status::infeasible ? 1 : 2]++;
    for (lp::Arithmetic arithmetic : {lp::Arithmetic::exact, lp::Arithmetic::floating}) {
      lp::SolverOptions options;
      options.arithmetic = arithmetic;
      const lp::LpSolution s = lp::solve(p, options);
      bool ok = s.status == oracle.status;
      if (ok && s.optimal()) ok = close(s.objective, oracle.objective) && lp::is_feasible(p, s.values, kTol);
      if (!ok) {
        ++wrong;
        if (first.empty()) {
          first = " first: program " + std::to_string(i) + (arithmetic == lp::Arithmetic::exact ? " exact" : " floating") +
                  " solver " + lp::to_string(s.status) + " " + to_string(s.objective) + ", oracle " +
                  lp::to_string(oracle.status) + " " + to_string(oracle.objective);
        }
      }
    }
  }
  return {wrong == 0, std::to_string(kRandomPrograms) + " programs (" + std::to_string(counts[0]) + " optimal, " +
                          std::to_string(counts[1]) + " infeasible, " + std::to_string(counts[2]) +
                          " unbounded), exact and floating solves, " + std::to_string(wrong) + " mismatches;" + first};
}

struct Criterion {
  const char* title;
  double budget_seconds;  // 0: none
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"worked-example costs", 1, criterion_1},
      {"scenario term: closed form and max-flow", 1, criterion_2},
      {"tightness oracle: Q equals minimum max-flow", 60, criterion_3},
      {"exchanged-minimum identity", 0, criterion_4},
      {"minimum cut cardinality >= k_min", 0, criterion_5},
      {"linearization exactness", 60, criterion_6},
      {"four-node sweep and restriction monotonicity", 30, criterion_7},
      {"homogeneous sanity point", 0, criterion_8},
      {"simplex vs vertex enumeration", 30, criterion_9},
  };

  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      const int c = std::atoi(argv[++i]);
      if (c < 1 || c > static_cast<int>(criteria.size())) {
        std::cerr << "unknown criterion " << argv[i] << '\n';
        return 64;
      }
      selected.push_back(static_cast<std::size_t>(c));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 64;
    }
  }
  if (selected.empty()) {
    for (std::size_t c = 1; c <= criteria.size(); ++c) selected.push_back(c);
  }

  int failures = 0;
  for (std::size_t c : selected) {
    const Criterion& criterion = criteria[c - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.budget_seconds > 0 && seconds > criterion.budget_seconds) {
      outcome.pass = false;
      outcome.detail += "; over the " + std::to_string(criterion.budget_seconds) + " s budget";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds);
    std::cout << "criterion " << c << ' ' << (outcome.pass ? "PASS" : "FAIL") << " [" << criterion.title << "] "
              << outcome.detail << " (" << timing << ")" << std::endl;
    failures += outcome.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
