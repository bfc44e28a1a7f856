#include "hetdss/optimizer.hpp"

#include "hetdss/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hetdss {
namespace {

// Every r-subset of `pool`, lexicographic.
std::vector<NodeSet> subsets(const NodeSet& pool, std::size_t r) {
  std::vector<NodeSet> out;
  if (r > pool.size()) return out;
  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    NodeSet set;
    for (std::size_t i : pick) set.push_back(pool[i]);
    out.push_back(std::move(set));
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == pool.size() - r + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

bool uses_k(Mode mode) { return mode == Mode::uniform_reconstruction || mode == Mode::homogeneous; }
bool uses_d(Mode mode) { return mode == Mode::uniform_repair_degree || mode == Mode::homogeneous; }

std::uint64_t sequence_total(const DssSpec& spec) {
  std::uint64_t total = 0;
  for (std::size_t t = 0; t < spec.reconstruction_sets.size(); ++t) {
    const std::uint64_t count = node_sequence_count(spec, t);
    if (total > UINT64_MAX - count) throw CountOverflow("sequence count overflows 64 bits");
    total += count;
  }
  return total;
}

void check_row_budget(const DssSpec& spec, const ProblemConfig& config) {
  if (config.mode == Mode::homogeneous) return;
  if (config.encoding == Encoding::per_scenario) {
    check_enumeration_limit(spec, config.limits);
    return;
  }
  std::uint64_t required = 0;
  try {
    required = sequence_total(spec);
  } catch (const CountOverflow&) {
    throw EnumerationLimitExceeded(UINT64_MAX, config.limits.max_scenarios);
  }
  if (required > config.limits.max_scenarios) {
    throw EnumerationLimitExceeded(required, config.limits.max_scenarios);
  }
}

// Download into sequence[position] through set `l`, skipping earlier failures.
Rational download(const DssSpec& spec, const BetaLayout& layout, const std::vector<Rational>& beta,
                  const NodeSequence& sequence, std::size_t position, std::size_t l) {
  const NodeIndex u = sequence.nodes[position];
  const auto failed_before = [&](NodeIndex h) {
    return std::find(sequence.nodes.begin(), sequence.nodes.begin() + static_cast<long>(position), h) !=
           sequence.nodes.begin() + static_cast<long>(position);
  };
  Rational total = 0;
  std::size_t slot = layout.offset(u, l);
  for (NodeIndex h : spec.surviving_sets[u][l]) {
    if (!failed_before(h)) total += beta[slot];
    ++slot;
  }
  return total;
}

Rational scaled_tolerance(double tolerance, const Rational& magnitude) {
  return rational_from_double(tolerance) * std::max(Rational(1), abs(magnitude));
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::general: return "general";
    case Mode::uniform_reconstruction: return "uniform_reconstruction";
    case Mode::uniform_repair_degree: return "uniform_repair_degree";
    case Mode::uniform_beta: return "uniform_beta";
    case Mode::homogeneous: return "homogeneous";
  }
  return "unknown";
}

Mode parse_mode(const std::string& text) {
  std::string name = text;
  std::replace(name.begin(), name.end(), '-', '_');
  for (Mode mode : {Mode::general, Mode::uniform_reconstruction, Mode::uniform_repair_degree, Mode::uniform_beta,
                    Mode::homogeneous}) {
    if (to_string(mode) == name) return mode;
  }
  throw std::invalid_argument("unknown mode '" + text +
                              "' (general, uniform_reconstruction, uniform_repair_degree, uniform_beta, "
                              "homogeneous)");
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw std::invalid_argument("grid needs at least one point");
  if (!(lo > 0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("grid bounds must satisfy 0 < lo <= hi");
  }
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> default_weights() { return log_grid(1e-3, 1e3, 10); }

void check_config(const DssSpec& spec, const ProblemConfig& config) {
  if (config.weights.empty()) throw std::invalid_argument("weight grid is empty");
  for (std::size_t i = 0; i < config.weights.size(); ++i) {
    const double w = config.weights[i];
    if (!std::isfinite(w) || !(w > 0)) throw std::invalid_argument("weights must be finite and positive");
    if (i > 0 && !(w > config.weights[i - 1])) throw std::invalid_argument("weights must be strictly ascending");
  }
  const std::size_t n = spec.node_count;
  if (uses_k(config.mode) && (config.k == 0 || config.k > n)) {
    throw std::invalid_argument(to_string(config.mode) + " mode needs 1 <= k <= " + std::to_string(n));
  }
  if (uses_d(config.mode) && (config.d == 0 || config.d + 1 > n)) {
    throw std::invalid_argument(to_string(config.mode) + " mode needs 1 <= d <= " + std::to_string(n - 1));
  }
}

DssSpec materialize(const DssSpec& spec, const ProblemConfig& config) {
  DssSpec out = require_valid(spec);
  check_config(out, config);
  NodeSet all(out.node_count);
  std::iota(all.begin(), all.end(), 0);
  if (uses_k(config.mode)) out.reconstruction_sets = subsets(all, config.k);
  if (uses_d(config.mode)) {
    for (NodeIndex i = 0; i < out.node_count; ++i) {
      NodeSet others;
      for (NodeIndex j : all) {
        if (j != i) others.push_back(j);
      }
      out.surviving_sets[i] = subsets(others, config.d);
    }
  }
  return out;
}

DssLinearProgram build_lp(const DssSpec& spec, const ProblemConfig& config, const Rational& lambda) {
  if (lambda <= 0) throw std::invalid_argument("weight must be positive");
  DssLinearProgram model;
  model.spec = materialize(spec, config);
  model.mode = config.mode;
  model.k = config.k;
  model.d = config.d;
  const DssSpec& m = model.spec;
  check_row_budget(m, config);

  const BetaLayout layout(m);
  auto& lp = model.program;
  const std::size_t n = m.node_count;
  const bool one_alpha = config.mode == Mode::homogeneous;
  const bool one_beta = config.mode == Mode::homogeneous || config.mode == Mode::uniform_beta;

  if (one_alpha) {
    model.alpha_var.assign(n, lp.add_variable("alpha"));
  } else {
    for (NodeIndex j = 0; j < n; ++j) model.alpha_var.push_back(lp.add_variable("alpha_" + std::to_string(j)));
  }
  if (one_beta) {
    model.beta_var.assign(layout.size(), lp.add_variable("beta"));
  } else {
    for (const BetaSlot& s : layout.slots()) {
      model.beta_var.push_back(lp.add_variable("beta_" + std::to_string(s.node) + "_" + std::to_string(s.set) +
                                               "_" + std::to_string(s.helper)));
    }
  }

  for (NodeIndex j = 0; j < n; ++j) lp.objective[model.alpha_var[j]] += lambda * m.storage_cost[j] / m.file_size;
  for (std::size_t slot = 0; slot < layout.size(); ++slot) {
    const BetaSlot& s = layout.slots()[slot];
    const Rational tau(static_cast<long>(m.surviving_sets[s.node].size()));
    lp.objective[model.beta_var[slot]] += m.download_cost[s.helper] / (m.file_size * tau);
  }

  using Terms = std::vector<std::pair<std::size_t, Rational>>;
  const auto add_z = [&](const std::string& name, Auxiliary aux) {
    aux.variable = lp.add_variable(name);
    model.auxiliaries.push_back(aux);
    return aux.variable;
  };

  if (config.mode == Mode::homogeneous) {
    Terms sum;
    for (std::size_t p = 0; p < config.k; ++p) {
      const std::size_t z = add_z("z_" + std::to_string(p + 1), Auxiliary{0, {}, p, std::nullopt});
      const std::size_t helpers = config.d >= p ? config.d - p : 0;
      lp.add_constraint({{z, 1}, {model.alpha_var[0], -1}}, lp::Relation::less_equal, 0);
      lp.add_constraint({{z, 1}, {model.beta_var[0], -Rational(static_cast<long>(helpers))}},
                        lp::Relation::less_equal, 0);
      sum.emplace_back(z, 1);
    }
    lp.add_constraint(sum, lp::Relation::greater_equal, m.file_size, "file");
    return model;
  }

  // z <= alpha_u and z <= download through set l for the given sets.
  const auto bound_position = [&](std::size_t z, const NodeSequence& seq, std::size_t p,
                                  const std::vector<std::size_t>& sets) {
    const NodeIndex u = seq.nodes[p];
    lp.add_constraint({{z, 1}, {model.alpha_var[u], -1}}, lp::Relation::less_equal, 0);
    for (std::size_t l : sets) {
      Terms row{{z, 1}};
      std::size_t slot = layout.offset(u, l);
      for (NodeIndex h : m.surviving_sets[u][l]) {
        if (std::find(seq.nodes.begin(), seq.nodes.begin() + static_cast<long>(p), h) ==
            seq.nodes.begin() + static_cast<long>(p)) {
          row.emplace_back(model.beta_var[slot], -1);
        }
        ++slot;
      }
      lp.add_constraint(row, lp::Relation::less_equal, 0);
    }
  };

  std::size_t block = 0;
  for (std::size_t t = 0; t < m.reconstruction_sets.size(); ++t) {
    NodeSequenceStream sequences(m, t);
    while (auto seq = sequences.next()) {
      if (config.encoding == Encoding::per_position) {
        Terms sum;
        for (std::size_t p = 0; p < seq->nodes.size(); ++p) {
          const std::size_t z =
              add_z("z_" + std::to_string(block) + "_" + std::to_string(p), Auxiliary{0, *seq, p, std::nullopt});
          std::vector<std::size_t> all(m.surviving_sets[seq->nodes[p]].size());
          std::iota(all.begin(), all.end(), 0);
          bound_position(z, *seq, p, all);
          sum.emplace_back(z, 1);
        }
        lp.add_constraint(sum, lp::Relation::greater_equal, m.file_size, "seq_" + std::to_string(block));
        ++block;
        continue;
      }
      ScenarioStream scenarios(m, *seq);
      while (auto sc = scenarios.next()) {
        Terms sum;
        for (std::size_t p = 0; p < seq->nodes.size(); ++p) {
          const std::size_t z = add_z("z_" + std::to_string(block) + "_" + std::to_string(p),
                                      Auxiliary{0, *seq, p, sc->choices[p]});
          bound_position(z, *seq, p, {sc->choices[p]});
          sum.emplace_back(z, 1);
        }
        lp.add_constraint(sum, lp::Relation::greater_equal, m.file_size, "scn_" + std::to_string(block));
        ++block;
      }
    }
  }
  return model;
}

std::optional<std::vector<Rational>> realize(const DssLinearProgram& model, const Assignment& assignment) {
  check_assignment_shape(model.spec, assignment);
  const auto& lp = model.program;
  std::vector<Rational> x(lp.variable_count());
  std::vector<bool> set(lp.variable_count(), false);
  const auto put = [&](std::size_t var, const Rational& value) {
    if (set[var] && x[var] != value) return false;
    x[var] = value;
    set[var] = true;
    return true;
  };
  for (NodeIndex j = 0; j < model.spec.node_count; ++j) {
    if (!put(model.alpha_var[j], assignment.alpha[j])) return std::nullopt;
  }
  for (std::size_t s = 0; s < model.beta_var.size(); ++s) {
    if (!put(model.beta_var[s], assignment.beta[s])) return std::nullopt;
  }

  const BetaLayout layout(model.spec);
  for (const Auxiliary& aux : model.auxiliaries) {
    Rational z;
    if (model.mode == Mode::homogeneous) {
      const std::size_t helpers = model.d >= aux.position ? model.d - aux.position : 0;
      z = std::min(x[model.alpha_var[0]], Rational(static_cast<long>(helpers)) * x[model.beta_var[0]]);
    } else {
      const NodeIndex u = aux.sequence.nodes[aux.position];
      z = assignment.alpha[u];
      const std::size_t tau = model.spec.surviving_sets[u].size();
      for (std::size_t l = 0; l < tau; ++l) {
        if (aux.choice && *aux.choice != l) continue;
        z = std::min(z, download(model.spec, layout, assignment.beta, aux.sequence, aux.position, l));
      }
    }
    x[aux.variable] = std::max(z, Rational(0));
  }
  return x;
}

bool is_feasible_point(const DssLinearProgram& model, const Assignment& assignment, double tolerance) {
  const auto x = realize(model, assignment);
  return x && lp::is_feasible(model.program, *x, tolerance);
}

Assignment extract_assignment(const DssLinearProgram& model, const std::vector<Rational>& values) {
  Assignment a;
  for (std::size_t var : model.alpha_var) a.alpha.push_back(values.at(var));
  for (std::size_t var : model.beta_var) a.beta.push_back(values.at(var));
  return a;
}

std::vector<ParetoPoint> SweepResult::points() const {
  std::vector<ParetoPoint> out;
  for (const auto& o : outcomes) {
    if (o.point) out.push_back(*o.point);
  }
  return out;
}

SweepResult sweep(const DssSpec& spec, const ProblemConfig& config) {
  SweepResult result;
  result.spec = materialize(spec, config);
  const double tol = config.solver.arithmetic == lp::Arithmetic::exact ? 0.0 : config.solver.feasibility_tolerance;

  for (double weight : config.weights) {
    SweepOutcome outcome;
    outcome.lambda = weight;
    const Rational lambda = rational_from_decimal_double(weight);
    const DssLinearProgram model = build_lp(spec, config, lambda);
    const lp::LpSolution solution = lp::solve(model.program, config.solver);
    outcome.status = solution.status;
    if (!solution.optimal()) {
      outcome.message = "solver: " + lp::to_string(solution.status);
      result.outcomes.push_back(std::move(outcome));
      continue;
    }

    ParetoPoint point;
    point.lambda = weight;
    point.assignment = extract_assignment(model, solution.values);
    const CostReport costs = cost_report(model.spec, point.assignment);
    point.storage_cost = costs.storage_cost;
    point.repair_cost = costs.repair_cost;
    point.objective = lambda * point.storage_cost + point.repair_cost;
    if (config.mode == Mode::homogeneous) {
      point.q = homogeneous_term(point.assignment.alpha[0], point.assignment.beta[0], config.k, config.d);
    } else {
      point.q = q_bound_exchanged(model.spec, point.assignment, config.limits);
    }

    if (abs(Rational(point.objective - solution.objective)) > scaled_tolerance(tol, point.objective)) {
      outcome.status = lp::Status::numerical_failure;
      outcome.message = "objective " + to_decimal_string(solution.objective) + " disagrees with recomputed " +
                        to_decimal_string(point.objective);
    } else if (point.q < model.spec.file_size - scaled_tolerance(tol, model.spec.file_size)) {
      outcome.status = lp::Status::numerical_failure;
      outcome.message = "solution violates B <= Q (Q = " + to_decimal_string(point.q) + ")";
    } else {
      outcome.point = std::move(point);
    }
    result.outcomes.push_back(std::move(outcome));
  }
  return result;
}

std::vector<std::size_t> pareto_indices(const std::vector<ParetoPoint>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const ParetoPoint& x = points[a];
    const ParetoPoint& y = points[b];
    if (x.storage_cost != y.storage_cost) return x.storage_cost < y.storage_cost;
    if (x.repair_cost != y.repair_cost) return x.repair_cost < y.repair_cost;
    if (x.lambda != y.lambda) return x.lambda < y.lambda;
    if (x.assignment.alpha != y.assignment.alpha) return x.assignment.alpha < y.assignment.alpha;
    return a < b;
  });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    if (kept.empty() || points[i].repair_cost < points[kept.back()].repair_cost) kept.push_back(i);
  }
  return kept;
}

std::vector<ParetoPoint> pareto_filter(const std::vector<ParetoPoint>& points) {
  std::vector<ParetoPoint> out;
  for (std::size_t i : pareto_indices(points)) out.push_back(points[i]);
  return out;
}

}  // namespace hetdss
