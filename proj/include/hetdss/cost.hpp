#pragma once

// Storage and repair cost of an operating point, per unit of file.
//
//   C_s        = (1/B) sum_j s_j alpha_j
//   r(beta_i)  = (1/(B tau_i)) sum_l sum_{j in S_i^(l)} r_j beta(i, j, l)
//   C_r        = sum_i r(beta_i)
//
// The repair cost of a node averages uniformly over its surviving sets.

#include "hetdss/model.hpp"

#include <vector>

namespace hetdss {

struct CostReport {
  Rational storage_cost;                 // C_s
  std::vector<Rational> node_repair;     // r(beta_i)
  Rational repair_cost;                  // C_r
};

/// Throws std::invalid_argument if B <= 0 or alpha has the wrong length.
Rational storage_cost(const DssSpec& spec, const std::vector<Rational>& alpha);

Rational node_repair_cost(const DssSpec& spec, const std::vector<Rational>& beta, NodeIndex node);

Rational system_repair_cost(const DssSpec& spec, const std::vector<Rational>& beta);

CostReport cost_report(const DssSpec& spec, const Assignment& assignment);

}  // namespace hetdss
