// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpbound/entropy_cone.hpp"
#include "lpbound/lp_solver.hpp"
#include "lpbound/query.hpp"
#include "lpbound/statistic.hpp"

namespace lpbound {

// Optimum of: maximize h(all) over the cone subject to stat_term_i(h) <= b_i.
struct BoundReport {
  LpStatus status = LpStatus::kInfeasible;
  Cone cone = Cone::kPolymatroid;
  unsigned num_variables = 0;
  Rational log_bound;  // meaningful when optimal

  // One nonnegative multiplier per statistic with
  // sum_i weight_i * b_i == log_bound and
  // sum_i weight_i * stat_term_i(h) >= h(all) on the cone.
  std::vector<Rational> weights;

  // Shannon multipliers aligned with shannon_constraints(n), polymatroid only.
  std::vector<Rational> shannon_weights;

  // An optimal point, and for the normal and modular cones its coordinates
  // over the generators.
  SetFunction<Rational> optimum;
  std::vector<VariableSet> generators;
  std::vector<Rational> generator_coefficients;

  std::vector<std::string> warnings;
  std::size_t pivots = 0;

  bool optimal() const noexcept { return status == LpStatus::kOptimal; }
  // 2^log_bound; infinity when unbounded.
  double bound() const;
};

// The program solved by log_bound; unknowns are h(W) for every mask W under
// the polymatroid cone and generator coefficients otherwise.
struct BoundProgram {
  LinearProgram lp;
  std::vector<std::size_t> statistic_rows;
  std::vector<std::size_t> shannon_rows;
  std::vector<VariableSet> generators;
};
BoundProgram bound_program(unsigned n, std::span<const ConcreteStatistic> stats, Cone cone);

BoundReport log_bound(unsigned n, std::span<const ConcreteStatistic> stats, Cone cone);
// Validates statistics against the query; adds the girth warning for the
// modular cone.
BoundReport log_bound(const Query& query, std::span<const ConcreteStatistic> stats, Cone cone);

// Decides sum_i w_i * stat_term_i(h) >= h(all) over the cone by minimizing the
// difference on the slice sum_W h(W) <= 1.
struct ValidityResult {
  bool valid = true;
  Rational minimum;  // 0 when valid, negative otherwise
  // Minimizer scaled to integers; meaningful when invalid.
  SetFunction<Rational> counterexample;
  // lhs - rhs evaluated at the counterexample.
  Rational gap;
};
ValidityResult validity_check(unsigned n, std::span<const StatisticSpec> stats,
                              std::span<const Rational> weights, Cone cone);

// Statistic families used for comparisons.
std::vector<StatisticSpec> agm_statistics(const Query& query);
std::vector<StatisticSpec> panda_statistics(const Query& query, unsigned max_given = 2);
// Per atom: the l1 norm over all its variables, plus for each p and each
// variable x the norm of deg(rest | x).
std::vector<StatisticSpec> lp_norm_statistics(const Query& query, std::span<const NormIndex> norms);

// "agm", "panda", or a comma-separated list of norms such as "1,2,inf".
std::vector<StatisticSpec> preset_statistics(const Query& query, std::string_view preset);

// Measures each statistic on the database. Values enter exact arithmetic
// rounded up to a multiple of 2^-40; an empty relation is recorded as 0 bits.
std::vector<ConcreteStatistic> collect_statistics(const Query& query, const Database& database,
                                                  std::span<const StatisticSpec> specs);

BoundReport preset_bound(const Query& query, const Database& database, std::string_view preset,
                         Cone cone = Cone::kPolymatroid);

}  // namespace lpbound
