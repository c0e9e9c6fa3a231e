// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpbound/linear_term.hpp"
#include "lpbound/rational.hpp"

namespace lpbound {

enum class Objective { kMaximize, kMinimize };
enum class RowSense { kLessEqual, kEqual, kGreaterEqual };
enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

std::string to_string(LpStatus status);

struct LpConstraint {
  LinearTerm lhs;
  RowSense sense = RowSense::kLessEqual;
  Rational rhs;
  std::string name;
};

// Variables are nonnegative unless marked free.
struct LinearProgram {
  std::size_t num_variables = 0;
  Objective sense = Objective::kMaximize;
  LinearTerm objective;
  std::vector<LpConstraint> constraints;
  std::vector<bool> free_variables;  // empty means none are free
  std::vector<std::string> variable_names;

  std::size_t add_constraint(LinearTerm lhs, RowSense sense, Rational rhs, std::string name = {});
  bool is_free(std::size_t variable) const {
    return variable < free_variables.size() && free_variables[variable];
  }
};

// For an optimal solution, dual holds one multiplier per constraint with
// objective == b.dual and the usual sign conventions: for maximization,
// multipliers of <= rows are >= 0 and of >= rows are <= 0, and A^T dual >= c
// (== c on free variables). Minimization flips every inequality.
//
// For an infeasible program, dual is a Farkas certificate: the same row
// signs as maximization, A^T dual >= 0 (== 0 on free variables) and
// b.dual < 0.
//
// For an unbounded program, primal is feasible and ray is a direction that
// keeps it feasible while improving the objective without limit.
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::vector<Rational> ray;
  std::size_t pivots = 0;
  bool switched_to_bland = false;
};

struct SolveOptions {
  // Consecutive degenerate pivots allowed under the largest-coefficient rule
  // before switching permanently to Bland's rule.
  std::size_t degeneracy_limit = 50;
  std::size_t max_pivots = 1000000;
};

// Exact two-phase primal simplex over the rationals.
LpSolution solve(const LinearProgram& lp, const SolveOptions& options = {});

// Re-checks the certificate carried by a solution in exact arithmetic.
bool verify(const LinearProgram& lp, const LpSolution& solution);

// Fixed-format MPS rendering with coefficients as decimals.
void write_mps(const LinearProgram& lp, std::ostream& out, const std::string& name = "LPBOUND");

}  // namespace lpbound
