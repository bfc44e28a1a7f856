#pragma once

// Storage/repair cost tradeoff as a family of linear programs.
//
// For a weight lambda > 0 the program is
//
//   minimize   lambda * C_s(alpha) + C_r(beta)
//   subject to B <= Q(alpha, beta),  alpha, beta >= 0
//
// Q is a minimum of sums of minima, so every node sequence q of every
// reconstruction set gets one auxiliary z per position p:
//
//   z_{q,p} <= alpha_{u_p}
//   z_{q,p} <= sum of beta(u_p, l, h) over helpers h not failed before p,  for every l
//   sum_p z_{q,p} >= B
//
// Because the z only bound Q from below, (alpha, beta) is feasible exactly
// when B <= Q(alpha, beta).
//
// Restricted modes rewrite the spec before encoding:
//   uniform_reconstruction(k)  every k-subset of nodes is a reconstruction set
//   uniform_repair_degree(d)   every d-subset of the other nodes repairs a node
//   uniform_beta               all download amounts share one variable
//   homogeneous(k, d)          all of the above plus a single alpha; encoded
//                              compactly with z_i <= alpha, z_i <= (d-i+1) beta

#include "hetdss/bound.hpp"
#include "hetdss/enumeration.hpp"
#include "hetdss/lp.hpp"
#include "hetdss/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hetdss {

enum class Mode { general, uniform_reconstruction, uniform_repair_degree, uniform_beta, homogeneous };

std::string to_string(Mode mode);
/// Accepts the names printed by to_string (and dashes for underscores).
Mode parse_mode(const std::string& text);

enum class Encoding {
  per_position,  // one z row per surviving-set choice of each position
  per_scenario,  // one z block per full scenario; exponential, for testing
};

/// `count` values log-spaced on [lo, hi], endpoints exact. count == 1 gives {lo}.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

std::vector<double> default_weights();

struct ProblemConfig {
  Mode mode = Mode::general;
  std::size_t k = 0;  // uniform_reconstruction, homogeneous
  std::size_t d = 0;  // uniform_repair_degree, homogeneous
  std::vector<double> weights = default_weights();
  Encoding encoding = Encoding::per_position;
  BoundOptions limits;
  lp::SolverOptions solver;
};

/// Throws std::invalid_argument on an empty, non-positive or unsorted grid
/// or on k/d missing or out of range for the mode.
void check_config(const DssSpec& spec, const ProblemConfig& config);

/// The spec the mode actually optimizes over (sets replaced as needed).
DssSpec materialize(const DssSpec& spec, const ProblemConfig& config);

struct Auxiliary {
  std::size_t variable = 0;
  NodeSequence sequence;  // empty in homogeneous mode
  std::size_t position = 0;
  /// per_scenario encoding: the surviving-set choice fixed for this z.
  std::optional<std::size_t> choice;
};

struct DssLinearProgram {
  lp::LinearProgram program;
  DssSpec spec;  // materialized
  Mode mode = Mode::general;
  std::size_t k = 0;
  std::size_t d = 0;
  std::vector<std::size_t> alpha_var;  // per node
  std::vector<std::size_t> beta_var;   // per BetaLayout slot of `spec`
  std::vector<Auxiliary> auxiliaries;
};

/// Throws EnumerationLimitExceeded when the rows would need more sequences
/// (or scenarios, per_scenario) than config.limits allows.
DssLinearProgram build_lp(const DssSpec& spec, const ProblemConfig& config, const Rational& lambda);

/// LP variable values for an operating point of the materialized spec, each z
/// set to its largest admissible value. nullopt when the point breaks the
/// mode's aliasing (e.g. unequal betas under uniform_beta).
std::optional<std::vector<Rational>> realize(const DssLinearProgram& model, const Assignment& assignment);

bool is_feasible_point(const DssLinearProgram& model, const Assignment& assignment,
                       double tolerance = kTolerance);

/// Operating point read off an LP solution, in the materialized layout.
Assignment extract_assignment(const DssLinearProgram& model, const std::vector<Rational>& values);

struct ParetoPoint {
  double lambda = 0;
  Rational storage_cost;  // C_s
  Rational repair_cost;   // C_r
  Rational q;
  Rational objective;     // lambda * C_s + C_r
  Assignment assignment;
};

struct SweepOutcome {
  double lambda = 0;
  lp::Status status = lp::Status::numerical_failure;
  std::optional<ParetoPoint> point;
  std::string message;  // why a point is missing or was rejected
};

struct SweepResult {
  DssSpec spec;  // materialized
  std::vector<SweepOutcome> outcomes;  // grid order

  std::vector<ParetoPoint> points() const;
};

/// One solve per weight. Failures stay in their outcome; the sweep goes on.
/// Each solution is re-costed and re-bounded independently; a mismatch is
/// reported as numerical_failure.
SweepResult sweep(const DssSpec& spec, const ProblemConfig& config);

/// Indices of the non-dominated points in (C_s, C_r), ordered by C_s. Among
/// exact ties the smallest (lambda, alpha) wins.
std::vector<std::size_t> pareto_indices(const std::vector<ParetoPoint>& points);

std::vector<ParetoPoint> pareto_filter(const std::vector<ParetoPoint>& points);

}  // namespace hetdss
