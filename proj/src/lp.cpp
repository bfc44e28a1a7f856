#include "hetdss/lp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hetdss::lp {
namespace {

template <class T>
T convert(const Rational& value);

template <>
Rational convert<Rational>(const Rational& value) {
  return value;
}

template <>
double convert<double>(const Rational& value) {
  return to_double(value);
}

Rational to_rational(const Rational& value) { return value; }
Rational to_rational(double value) { return rational_from_double(value); }

template <class T>
T abs_value(const T& value) {
  return value < 0 ? T(-value) : value;
}

enum class ColumnKind { structural, slack, artificial };

template <class T>
class Tableau {
 public:
  Tableau(const LinearProgram& program, const SolverOptions& options, T feasibility_eps, T optimality_eps)
      : program_(program),
        options_(options),
        feas_eps_(std::move(feasibility_eps)),
        opt_eps_(std::move(optimality_eps)) {
    const std::size_t n = program.variable_count();
    const std::size_t m = program.constraints.size();
    kinds_.assign(n, ColumnKind::structural);

    struct RowPlan {
      bool flip;
      Relation relation;
    };
    std::vector<RowPlan> plans;
    for (const auto& row : program.constraints) {
      const bool flip = row.rhs < 0;
      Relation relation = row.relation;
      if (flip && relation == Relation::less_equal) relation = Relation::greater_equal;
      else if (flip && relation == Relation::greater_equal) relation = Relation::less_equal;
      plans.push_back({flip, relation});
      if (relation == Relation::less_equal) kinds_.push_back(ColumnKind::slack);
      if (relation == Relation::greater_equal) {
        kinds_.push_back(ColumnKind::slack);
        kinds_.push_back(ColumnKind::artificial);
      }
      if (relation == Relation::equal) kinds_.push_back(ColumnKind::artificial);
    }
    cols_ = kinds_.size();
    rows_.assign(m, std::vector<T>(cols_ + 1, T(0)));
    basis_.assign(m, 0);

    std::size_t next = n;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = program.constraints[i];
      const T sign = plans[i].flip ? T(-1) : T(1);
      for (std::size_t j = 0; j < n; ++j) rows_[i][j] = sign * convert<T>(row.coefficients[j]);
      rows_[i][cols_] = sign * convert<T>(row.rhs);
      switch (plans[i].relation) {
        case Relation::less_equal:
          rows_[i][next] = T(1);
          basis_[i] = next++;
          break;
        case Relation::greater_equal:
          rows_[i][next++] = T(-1);
          rows_[i][next] = T(1);
          basis_[i] = next++;
          break;
        case Relation::equal:
          rows_[i][next] = T(1);
          basis_[i] = next++;
          break;
      }
    }
  }

  Status run() {
    // Phase 1: minimize the sum of artificials.
    std::vector<T> phase_one(cols_, T(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (kinds_[j] == ColumnKind::artificial) phase_one[j] = T(1);
    }
    price(phase_one);
    std::vector<bool> allowed(cols_, true);
    if (Status s = iterate(allowed); s != Status::optimal) return s;
    if (T(-cost_[cols_]) > feas_eps_) return Status::infeasible;

    // Pivot remaining zero-level artificials out where a real column allows
    // it; rows with no such column are redundant and stay inert.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (kinds_[basis_[i]] != ColumnKind::artificial) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (kinds_[j] != ColumnKind::artificial && abs_value(rows_[i][j]) > feas_eps_) {
          pivot(i, j);
          break;
        }
      }
    }

    // Phase 2.
    std::vector<T> phase_two(cols_, T(0));
    for (std::size_t j = 0; j < program_.variable_count(); ++j) phase_two[j] = convert<T>(program_.objective[j]);
    price(phase_two);
    for (std::size_t j = 0; j < cols_; ++j) allowed[j] = kinds_[j] != ColumnKind::artificial;
    return iterate(allowed);
  }

  std::vector<T> primal() const {
    std::vector<T> x(program_.variable_count(), T(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < x.size()) x[basis_[i]] = rows_[i][cols_];
    }
    return x;
  }

  std::size_t iterations() const { return iterations_; }

 private:
  // Reduced costs of `costs` for the current basis.
  void price(const std::vector<T>& costs) {
    cost_.assign(cols_ + 1, T(0));
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = costs[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T& cb = costs[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (rows_[i][j] != 0) cost_[j] -= cb * rows_[i][j];
      }
    }
  }

  Status iterate(const std::vector<bool>& allowed) {
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && cost_[j] < T(-opt_eps_)) {
          entering = j;
          break;
        }
      }
      if (entering == cols_) return Status::optimal;

      std::size_t leaving = rows_.size();
      T best_ratio(0);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const T& a = rows_[i][entering];
        if (!(a > feas_eps_)) continue;
        T ratio = rows_[i][cols_] / a;
        if (leaving == rows_.size() || ratio < best_ratio - feas_eps_) {
          leaving = i;
          best_ratio = ratio;
        } else if (abs_value(T(ratio - best_ratio)) <= feas_eps_ && basis_[i] < basis_[leaving]) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == rows_.size()) return Status::unbounded;
      if (++iterations_ > options_.max_iterations) return Status::iteration_limit;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    std::vector<T>& prow = rows_[r];
    const T piv = prow[c];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (prow[j] != 0) {
        prow[j] /= piv;
        nonzero.push_back(j);
      }
    }
    prow[c] = T(1);
    auto eliminate = [&](std::vector<T>& row) {
      const T factor = row[c];
      if (factor == 0) return;
      for (std::size_t j : nonzero) row[j] -= factor * prow[j];
      row[c] = T(0);
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(cost_);
    basis_[r] = c;
  }

  const LinearProgram& program_;
  const SolverOptions& options_;
  T feas_eps_;
  T opt_eps_;
  std::vector<ColumnKind> kinds_;
  std::size_t cols_ = 0;
  std::vector<std::vector<T>> rows_;
  std::vector<T> cost_;
  std::vector<std::size_t> basis_;
  std::size_t iterations_ = 0;
};

template <class T>
LpSolution solve_with(const LinearProgram& program, const SolverOptions& options, T feas_eps, T opt_eps) {
  Tableau<T> tableau(program, options, std::move(feas_eps), std::move(opt_eps));
  LpSolution solution;
  solution.status = tableau.run();
  solution.iterations = tableau.iterations();
  if (solution.status != Status::optimal) return solution;
  for (const T& value : tableau.primal()) solution.values.push_back(to_rational(value));
  solution.objective = evaluate_objective(program, solution.values);
  return solution;
}

void check_shape(const LinearProgram& program) {
  const std::size_t n = program.variable_count();
  if (program.objective.size() != n) {
    throw std::invalid_argument("objective has " + std::to_string(program.objective.size()) +
                                " coefficients for " + std::to_string(n) + " variables");
  }
  for (std::size_t i = 0; i < program.constraints.size(); ++i) {
    if (program.constraints[i].coefficients.size() != n) {
      throw std::invalid_argument("constraint " + std::to_string(i) + " has " +
                                  std::to_string(program.constraints[i].coefficients.size()) +
                                  " coefficients for " + std::to_string(n) + " variables");
    }
  }
}

}  // namespace

std::size_t LinearProgram::add_variable(std::string name, Rational cost) {
  variable_names.push_back(std::move(name));
  objective.push_back(std::move(cost));
  for (auto& row : constraints) row.coefficients.emplace_back(0);
  return variable_names.size() - 1;
}

void LinearProgram::add_constraint(const std::vector<std::pair<std::size_t, Rational>>& terms,
                                   Relation relation, Rational rhs, std::string name) {
  Constraint row;
  row.coefficients.assign(variable_count(), Rational(0));
  for (const auto& [index, coefficient] : terms) {
    if (index >= variable_count()) throw std::out_of_range("constraint references a missing variable");
    row.coefficients[index] += coefficient;
  }
  row.relation = relation;
  row.rhs = std::move(rhs);
  row.name = std::move(name);
  constraints.push_back(std::move(row));
}

std::string to_string(Status status) {
  switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::numerical_failure: return "numerical_failure";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

Rational evaluate_objective(const LinearProgram& program, const std::vector<Rational>& x) {
  Rational total = 0;
  for (std::size_t j = 0; j < x.size() && j < program.objective.size(); ++j) total += program.objective[j] * x[j];
  return total;
}

bool is_feasible(const LinearProgram& program, const std::vector<Rational>& x, double tolerance) {
  if (x.size() != program.variable_count()) return false;
  const Rational tol = rational_from_double(tolerance);
  for (const auto& value : x) {
    if (value < -tol) return false;
  }
  for (const auto& row : program.constraints) {
    Rational lhs = 0;
    Rational magnitude = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (row.coefficients[j] == 0) continue;
      const Rational term = row.coefficients[j] * x[j];
      lhs += term;
      magnitude += abs(term);
    }
    const Rational scale = std::max({Rational(1), abs(row.rhs), magnitude});
    const Rational slack = tol * scale;
    switch (row.relation) {
      case Relation::less_equal:
        if (lhs > row.rhs + slack) return false;
        break;
      case Relation::greater_equal:
        if (lhs < row.rhs - slack) return false;
        break;
      case Relation::equal:
        if (abs(Rational(lhs - row.rhs)) > slack) return false;
        break;
    }
  }
  return true;
}

LpSolution solve(const LinearProgram& program, const SolverOptions& options) {
  check_shape(program);
  if (options.arithmetic == Arithmetic::exact) {
    return solve_with<Rational>(program, options, Rational(0), Rational(0));
  }
  LpSolution solution =
      solve_with<double>(program, options, options.feasibility_tolerance, options.optimality_tolerance);
  if (solution.optimal() && !is_feasible(program, solution.values, options.feasibility_tolerance)) {
    solution.status = Status::numerical_failure;
  }
  return solution;
}

std::string to_lp_format(const LinearProgram& program) {
  check_shape(program);
  std::ostringstream out;
  auto write_terms = [&](const std::vector<Rational>& coefficients) {
    bool any = false;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      if (coefficients[j] == 0) continue;
      out << ' ' << (coefficients[j] < 0 ? "-" : "+") << to_decimal_string(abs(coefficients[j])) << ' '
          << program.variable_names[j];
      any = true;
    }
    if (!any) out << " 0";
  };
  out << "/* " << program.variable_count() << " variables, " << program.constraints.size()
      << " constraints */\n";
  out << "min:";
  write_terms(program.objective);
  out << ";\n\n";
  for (std::size_t i = 0; i < program.constraints.size(); ++i) {
    const auto& row = program.constraints[i];
    out << (row.name.empty() ? "r" + std::to_string(i) : row.name) << ':';
    write_terms(row.coefficients);
    switch (row.relation) {
      case Relation::less_equal: out << " <= "; break;
      case Relation::greater_equal: out << " >= "; break;
      case Relation::equal: out << " = "; break;
    }
    out << to_decimal_string(row.rhs) << ";\n";
  }
  return out.str();
}

}  // namespace hetdss::lp
