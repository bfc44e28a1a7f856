#pragma once

// Small dense linear-programming kernel.
//
//   minimize    c^T x
//   subject to  a_i^T x  {<=, >=, =}  b_i
//               x >= 0
//
// solve() runs a two-phase tableau simplex with Bland's rule (smallest
// eligible index enters; ratio ties leave by smallest basic index), so it
// terminates on degenerate problems. Arithmetic is either exact (GMP
// rationals, the default) or double with configurable tolerances; in double
// mode the returned point is checked against the original rows and a
// failed check is reported as numerical_failure instead of optimal.

#include "hetdss/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace hetdss::lp {

enum class Relation { less_equal, greater_equal, equal };

struct Constraint {
  std::vector<Rational> coefficients;  // one per variable
  Relation relation = Relation::less_equal;
  Rational rhs;
  std::string name;
};

struct LinearProgram {
  std::vector<std::string> variable_names;
  std::vector<Rational> objective;  // minimized
  std::vector<Constraint> constraints;

  std::size_t variable_count() const { return variable_names.size(); }

  /// Appends a variable (extending existing rows with zeros); returns its index.
  std::size_t add_variable(std::string name, Rational cost = 0);

  /// Sparse convenience: terms are (variable, coefficient) pairs, repeated
  /// variables accumulate.
  void add_constraint(const std::vector<std::pair<std::size_t, Rational>>& terms, Relation relation,
                      Rational rhs, std::string name = {});
};

enum class Status { optimal, infeasible, unbounded, numerical_failure, iteration_limit };

std::string to_string(Status status);

enum class Arithmetic { exact, floating };

struct SolverOptions {
  Arithmetic arithmetic = Arithmetic::exact;
  /// Floating mode only: primal feasibility (pivot/ratio and post-check).
  double feasibility_tolerance = 1e-9;
  /// Floating mode only: a reduced cost below -tolerance is improving.
  double optimality_tolerance = 1e-9;
  std::size_t max_iterations = 1'000'000;
};

struct LpSolution {
  Status status = Status::numerical_failure;
  Rational objective;
  std::vector<Rational> values;
  std::size_t iterations = 0;

  bool optimal() const { return status == Status::optimal; }
};

/// Throws std::invalid_argument for rows whose length differs from the
/// variable count.
LpSolution solve(const LinearProgram& program, const SolverOptions& options = {});

/// True when x >= -tolerance and every row holds within `tolerance`
/// (absolute, scaled by max(1, |rhs|, sum |a_j x_j|)).
bool is_feasible(const LinearProgram& program, const std::vector<Rational>& x, double tolerance = kTolerance);

Rational evaluate_objective(const LinearProgram& program, const std::vector<Rational>& x);

/// lp_solve-compatible LP text: objective, named rows, nonnegative bounds
/// implied. Coefficients are printed as shortest round-trip decimals.
std::string to_lp_format(const LinearProgram& program);

}  // namespace hetdss::lp
