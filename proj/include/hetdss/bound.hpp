#pragma once

// Closed-form min-cut bound Q of a heterogeneous DSS at a fixed operating
// point (alpha, beta).
//
// For a scenario <u_1..u_k> with surviving-set choices <l_1..l_k> the term is
//
//   sum_p min{ alpha_{u_p},  sum_{h in S_{u_p}^(l_p) \ {u_1..u_{p-1}}} beta(u_p, h, l_p) }
//
// and Q is the minimum of that term over every reconstruction set, every
// ordering of it and every choice of surviving sets. A file of size B can be
// stored only if B <= Q.

#include "hetdss/enumeration.hpp"
#include "hetdss/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hetdss {

inline constexpr std::uint64_t kDefaultMaxScenarios = 10'000'000;

struct BoundOptions {
  /// Refuse to enumerate more scenarios than this.
  std::uint64_t max_scenarios = kDefaultMaxScenarios;
};

class EnumerationLimitExceeded : public std::runtime_error {
 public:
  EnumerationLimitExceeded(std::uint64_t required, std::uint64_t limit);
  std::uint64_t required() const { return required_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

struct BoundReport {
  Rational q;
  /// First minimizer in enumeration order.
  RepairScenario argmin;
  /// per_set[t]: minimum term over the scenarios of reconstruction set t.
  std::vector<Rational> per_set;
};

Rational scenario_term(const DssSpec& spec, const Assignment& assignment, const RepairScenario& scenario);

BoundReport q_bound(const DssSpec& spec, const Assignment& assignment, const BoundOptions& options = {});

/// Same value as q_bound().q, computed with the surviving-set minimum moved
/// inside the sum: per position, min over l of the download total given the
/// prefix. Scenario products are never materialized.
Rational q_bound_exchanged(const DssSpec& spec, const Assignment& assignment,
                           const BoundOptions& options = {});

/// sum_{i=1..k} min{alpha, max(d - i + 1, 0) * beta}: the bound of a system
/// where every node stores alpha, any d helpers repair a node by sending
/// beta each and any k nodes reconstruct.
Rational homogeneous_term(const Rational& alpha, const Rational& beta, std::size_t k, std::size_t d);

struct FileSizeCheck {
  bool feasible = false;
  Rational q;
  /// q - B; negative when the file does not fit.
  Rational margin;
};

FileSizeCheck file_size_check(const DssSpec& spec, const Assignment& assignment,
                              const BoundOptions& options = {});

/// Throws EnumerationLimitExceeded when the spec has more scenarios than allowed.
void check_enumeration_limit(const DssSpec& spec, const BoundOptions& options);

}  // namespace hetdss
