// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/lp_solver.hpp"

#include <cstdio>
#include <ostream>

#include "lpbound/error.hpp"

namespace lpbound {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

std::size_t LinearProgram::add_constraint(LinearTerm lhs, RowSense row_sense, Rational rhs, std::string name) {
  constraints.push_back({std::move(lhs), row_sense, std::move(rhs), std::move(name)});
  return constraints.size() - 1;
}

namespace {

constexpr std::size_t kMaxTableauEntries = 60'000'000;

enum class ColumnKind { kStructural, kSlack, kSurplus, kArtificial };

// Dense simplex tableau in standard form: every row is an equation with a
// nonnegative right-hand side and one basic column.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    const std::size_t n = lp.num_variables;
    for (std::size_t j = 0; j < n; ++j) {
      plus_.push_back(add_column(ColumnKind::kStructural));
      minus_.push_back(lp.is_free(j) ? add_column(ColumnKind::kStructural) : kNone);
    }
    const std::size_t m = lp.constraints.size();
    flip_.assign(m, false);
    identity_.assign(m, kNone);
    std::vector<RowSense> senses(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = lp.constraints[i];
      for (const auto& [index, _] : row.lhs.coefficients()) {
        if (index >= n) invalid("constraint '" + row.name + "' references variable " + std::to_string(index));
      }
      RowSense sense = row.sense;
      const int rhs_sign = sgn(row.rhs);
      if (rhs_sign < 0 || (rhs_sign == 0 && sense == RowSense::kGreaterEqual)) {
        flip_[i] = true;
        if (sense == RowSense::kLessEqual) sense = RowSense::kGreaterEqual;
        else if (sense == RowSense::kGreaterEqual) sense = RowSense::kLessEqual;
      }
      senses[i] = sense;
    }
    std::vector<std::size_t> basis_column(m);
    for (std::size_t i = 0; i < m; ++i) {
      switch (senses[i]) {
        case RowSense::kLessEqual:
          identity_[i] = basis_column[i] = add_column(ColumnKind::kSlack);
          break;
        case RowSense::kGreaterEqual:
          surplus_.push_back({i, add_column(ColumnKind::kSurplus)});
          identity_[i] = basis_column[i] = add_column(ColumnKind::kArtificial);
          break;
        case RowSense::kEqual:
          identity_[i] = basis_column[i] = add_column(ColumnKind::kArtificial);
          break;
      }
    }
    width_ = kinds_.size();
    if ((m + 1) * (width_ + 1) > kMaxTableauEntries) {
      fail(ErrorKind::kResourceLimit, "linear program too large for the exact solver (" + std::to_string(m) +
                                          " rows, " + std::to_string(width_) + " columns)");
    }
    rows_.assign(m, std::vector<Rational>(width_ + 1));
    for (std::size_t i = 0; i < m; ++i) {
      const auto& row = lp.constraints[i];
      const int sign = flip_[i] ? -1 : 1;
      for (const auto& [index, coefficient] : row.lhs.coefficients()) {
        rows_[i][plus_[index]] += sign * coefficient;
        if (minus_[index] != kNone) rows_[i][minus_[index]] -= sign * coefficient;
      }
      rows_[i][width_] = sign * row.rhs;
      rows_[i][identity_[i]] = 1;
    }
    for (const auto& [i, column] : surplus_) rows_[i][column] = -1;
    basis_ = basis_column;
    reduced_.assign(width_ + 1, Rational(0));
  }

  LpSolution run(const SolveOptions& options) {
    options_ = options;
    LpSolution solution;

    // Phase 1: maximize minus the sum of artificials.
    std::vector<Rational> phase1_cost(width_);
    bool any_artificial = false;
    for (std::size_t j = 0; j < width_; ++j) {
      if (kinds_[j] == ColumnKind::kArtificial) {
        phase1_cost[j] = -1;
        any_artificial = true;
      }
    }
    if (any_artificial) {
      price(phase1_cost);
      banned_.assign(width_, false);
      iterate(solution);
      if (sgn(reduced_[width_]) > 0) {
        solution.status = LpStatus::kInfeasible;
        solution.dual = row_multipliers(phase1_cost);
        finish(solution);
        return solution;
      }
      drive_out_artificials();
    }

    // Phase 2.
    std::vector<Rational> cost(width_);
    const bool minimize = lp_.sense == Objective::kMinimize;
    for (const auto& [index, coefficient] : lp_.objective.coefficients()) {
      if (index >= lp_.num_variables) invalid("objective references variable " + std::to_string(index));
      cost[plus_[index]] = minimize ? Rational(-coefficient) : coefficient;
      if (minus_[index] != kNone) cost[minus_[index]] = -cost[plus_[index]];
    }
    price(cost);
    banned_.assign(width_, false);
    for (std::size_t j = 0; j < width_; ++j) banned_[j] = kinds_[j] == ColumnKind::kArtificial;

    std::size_t unbounded_column = iterate(solution);
    solution.primal = structural_values(basic_values());
    if (unbounded_column != kNone) {
      solution.status = LpStatus::kUnbounded;
      std::vector<Rational> direction(width_);
      direction[unbounded_column] = 1;
      for (std::size_t i = 0; i < rows_.size(); ++i) direction[basis_[i]] = -rows_[i][unbounded_column];
      solution.ray = structural_values(direction);
      finish(solution);
      return solution;
    }
    solution.status = LpStatus::kOptimal;
    solution.objective = -reduced_[width_];
    solution.dual = row_multipliers(cost);
    if (minimize) {
      solution.objective = -solution.objective;
      for (auto& y : solution.dual) y = -y;
    }
    finish(solution);
    return solution;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t add_column(ColumnKind kind) {
    kinds_.push_back(kind);
    return kinds_.size() - 1;
  }

  // reduced = cost - sum over rows of cost(basic) * row; the last entry holds
  // minus the current objective value.
  void price(const std::vector<Rational>& cost) {
    for (std::size_t j = 0; j < width_; ++j) reduced_[j] = cost[j];
    reduced_[width_] = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& weight = cost[basis_[i]];
      if (sgn(weight) == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j) {
        if (sgn(rows_[i][j]) != 0) reduced_[j] -= weight * rows_[i][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    std::vector<Rational>& pivot_row = rows_[r];
    if (pivot_row[e] != 1) {
      const Rational inverse = 1 / pivot_row[e];
      for (auto& v : pivot_row) {
        if (sgn(v) != 0) v *= inverse;
      }
    }
    nonzero_.clear();
    for (std::size_t j = 0; j <= width_; ++j) {
      if (sgn(pivot_row[j]) != 0) nonzero_.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& target) {
      if (sgn(target[e]) == 0) return;
      const Rational factor = target[e];
      for (std::size_t j : nonzero_) target[j] -= factor * pivot_row[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(reduced_);
    basis_[r] = e;
  }

  // Runs simplex iterations on the current pricing. Returns a column with
  // positive reduced cost and no limiting row when unbounded.
  std::size_t iterate(LpSolution& solution) {
    std::size_t degenerate_run = 0;
    for (;;) {
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < width_; ++j) {
        if (banned_[j] || sgn(reduced_[j]) <= 0) continue;
        if (bland_) {
          entering = j;
          break;
        }
        if (entering == kNone || reduced_[j] > reduced_[entering]) entering = j;
      }
      if (entering == kNone) return kNone;

      std::size_t leaving = kNone;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][entering];
        if (sgn(a) <= 0) continue;
        if (leaving == kNone) {
          leaving = i;
          continue;
        }
        // Compare rhs_i / a with rhs_leaving / a_leaving without dividing.
        const Rational lhs = rows_[i][width_] * rows_[leaving][entering];
        const Rational rhs = rows_[leaving][width_] * a;
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leaving])) leaving = i;
      }
      if (leaving == kNone) return entering;

      if (sgn(rows_[leaving][width_]) == 0) {
        if (++degenerate_run > options_.degeneracy_limit && !bland_) {
          bland_ = true;
          solution.switched_to_bland = true;
        }
      } else {
        degenerate_run = 0;
      }
      if (++solution.pivots > options_.max_pivots) {
        fail(ErrorKind::kResourceLimit, "simplex exceeded " + std::to_string(options_.max_pivots) + " pivots");
      }
      pivot(leaving, entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (kinds_[basis_[i]] != ColumnKind::kArtificial) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (kinds_[j] != ColumnKind::kArtificial && sgn(rows_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
      // Otherwise the row is redundant and its artificial stays basic at 0.
    }
  }

  std::vector<Rational> basic_values() const {
    std::vector<Rational> x(width_);
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rows_[i][width_];
    return x;
  }

  std::vector<Rational> structural_values(const std::vector<Rational>& internal) const {
    std::vector<Rational> x(lp_.num_variables);
    for (std::size_t j = 0; j < lp_.num_variables; ++j) {
      x[j] = internal[plus_[j]];
      if (minus_[j] != kNone) x[j] -= internal[minus_[j]];
    }
    return x;
  }

  // y_i = cost(identity column) - reduced(identity column), mapped back to
  // the original row orientation.
  std::vector<Rational> row_multipliers(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      y[i] = cost[identity_[i]] - reduced_[identity_[i]];
      if (flip_[i]) y[i] = -y[i];
    }
    return y;
  }

  void finish(LpSolution& solution) const {
    for (auto& v : solution.primal) v.canonicalize();
    for (auto& v : solution.dual) v.canonicalize();
  }

  const LinearProgram& lp_;
  SolveOptions options_;
  std::vector<ColumnKind> kinds_;
  std::vector<std::size_t> plus_;
  std::vector<std::size_t> minus_;
  std::vector<std::pair<std::size_t, std::size_t>> surplus_;
  std::vector<bool> flip_;
  std::vector<std::size_t> identity_;
  std::size_t width_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> reduced_;
  std::vector<std::size_t> basis_;
  std::vector<bool> banned_;
  std::vector<std::size_t> nonzero_;
  bool bland_ = false;
};

int row_violation(const LpConstraint& row, const Rational& activity) {
  const int cmp = activity < row.rhs ? -1 : (activity > row.rhs ? 1 : 0);
  switch (row.sense) {
    case RowSense::kLessEqual: return cmp > 0;
    case RowSense::kGreaterEqual: return cmp < 0;
    case RowSense::kEqual: return cmp != 0;
  }
  return 1;
}

// Row multiplier sign rules for a maximization read: <= rows take y >= 0 and
// >= rows take y <= 0. flip reverses them.
bool multiplier_sign_ok(RowSense sense, const Rational& y, bool flip) {
  const int s = flip ? -sgn(y) : sgn(y);
  switch (sense) {
    case RowSense::kLessEqual: return s >= 0;
    case RowSense::kGreaterEqual: return s <= 0;
    case RowSense::kEqual: return true;
  }
  return false;
}

std::vector<Rational> transpose_product(const LinearProgram& lp, const std::vector<Rational>& y) {
  std::vector<Rational> out(lp.num_variables);
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    if (sgn(y[i]) == 0) continue;
    for (const auto& [index, coefficient] : lp.constraints[i].lhs.coefficients()) out[index] += coefficient * y[i];
  }
  return out;
}

bool primal_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_variables) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!lp.is_free(j) && sgn(x[j]) < 0) return false;
  }
  for (const auto& row : lp.constraints) {
    if (row_violation(row, row.lhs.evaluate<Rational>(x))) return false;
  }
  return true;
}

bool is_canonical(const Rational& v) {
  return sgn(v.get_den()) > 0 && mpz_class(gcd(v.get_num(), v.get_den())) == 1;
}

bool is_canonical(const LinearTerm& term) {
  for (const auto& [_, coefficient] : term.coefficients()) {
    if (!is_canonical(coefficient)) return false;
  }
  return true;
}

// GMP arithmetic requires canonical operands; callers may build values with
// the two-integer constructor, which does not reduce.
bool is_canonical(const LinearProgram& lp) {
  if (!is_canonical(lp.objective)) return false;
  for (const auto& row : lp.constraints) {
    if (!is_canonical(row.rhs) || !is_canonical(row.lhs)) return false;
  }
  return true;
}

LinearTerm canonical_copy(const LinearTerm& term) {
  LinearTerm out;
  for (const auto& [index, coefficient] : term.coefficients()) {
    Rational value = coefficient;
    value.canonicalize();
    out.add(index, value);
  }
  return out;
}

LinearProgram canonical_copy(const LinearProgram& lp) {
  LinearProgram out = lp;
  out.objective = canonical_copy(lp.objective);
  for (auto& row : out.constraints) {
    row.lhs = canonical_copy(row.lhs);
    row.rhs.canonicalize();
  }
  return out;
}

bool verify_canonical(const LinearProgram& lp, const LpSolution& solution);

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolveOptions& options) {
  if (!lp.free_variables.empty() && lp.free_variables.size() != lp.num_variables) {
    invalid("free_variables must be empty or have one entry per variable");
  }
  if (!is_canonical(lp)) return solve(canonical_copy(lp), options);
  Tableau tableau(lp);
  LpSolution solution = tableau.run(options);
  if (!verify_canonical(lp, solution)) fail(ErrorKind::kInternal, "simplex produced a certificate that does not verify");
  return solution;
}

bool verify(const LinearProgram& lp, const LpSolution& solution) {
  if (!is_canonical(lp)) return verify_canonical(canonical_copy(lp), solution);
  return verify_canonical(lp, solution);
}

namespace {

bool verify_canonical(const LinearProgram& lp, const LpSolution& solution) {
  const std::size_t m = lp.constraints.size();
  const std::size_t n = lp.num_variables;
  const bool minimize = lp.sense == Objective::kMinimize;

  switch (solution.status) {
    case LpStatus::kOptimal: {
      const auto& x = solution.primal;
      const auto& y = solution.dual;
      if (y.size() != m || !primal_feasible(lp, x)) return false;
      for (std::size_t i = 0; i < m; ++i) {
        if (!multiplier_sign_ok(lp.constraints[i].sense, y[i], minimize)) return false;
        const Rational slack = lp.constraints[i].rhs - lp.constraints[i].lhs.evaluate<Rational>(x);
        if (sgn(y[i]) != 0 && sgn(slack) != 0) return false;
      }
      auto aty = transpose_product(lp, y);
      for (std::size_t j = 0; j < n; ++j) {
        const Rational reduced = aty[j] - lp.objective.coefficient(static_cast<std::uint32_t>(j));
        const int s = minimize ? -sgn(reduced) : sgn(reduced);
        if (lp.is_free(j) ? s != 0 : s < 0) return false;
        if (sgn(x[j]) != 0 && sgn(reduced) != 0) return false;
      }
      Rational primal_value = lp.objective.evaluate<Rational>(x);
      Rational dual_value = 0;
      for (std::size_t i = 0; i < m; ++i) dual_value += lp.constraints[i].rhs * y[i];
      return primal_value == solution.objective && dual_value == solution.objective;
    }
    case LpStatus::kInfeasible: {
      const auto& y = solution.dual;
      if (y.size() != m) return false;
      for (std::size_t i = 0; i < m; ++i) {
        if (!multiplier_sign_ok(lp.constraints[i].sense, y[i], false)) return false;
      }
      auto aty = transpose_product(lp, y);
      for (std::size_t j = 0; j < n; ++j) {
        if (lp.is_free(j) ? sgn(aty[j]) != 0 : sgn(aty[j]) < 0) return false;
      }
      Rational value = 0;
      for (std::size_t i = 0; i < m; ++i) value += lp.constraints[i].rhs * y[i];
      return sgn(value) < 0;
    }
    case LpStatus::kUnbounded: {
      const auto& d = solution.ray;
      if (d.size() != n || !primal_feasible(lp, solution.primal)) return false;
      for (std::size_t j = 0; j < n; ++j) {
        if (!lp.is_free(j) && sgn(d[j]) < 0) return false;
      }
      for (const auto& row : lp.constraints) {
        const int s = sgn(row.lhs.evaluate<Rational>(d));
        if (row.sense == RowSense::kLessEqual && s > 0) return false;
        if (row.sense == RowSense::kGreaterEqual && s < 0) return false;
        if (row.sense == RowSense::kEqual && s != 0) return false;
      }
      const int gain = sgn(lp.objective.evaluate<Rational>(d));
      return minimize ? gain < 0 : gain > 0;
    }
  }
  return false;
}

}  // namespace

void write_mps(const LinearProgram& lp, std::ostream& out, const std::string& name) {
  auto number = [](const Rational& v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", v.get_d());
    return std::string(buffer);
  };
  auto line = [&](const std::string& f1, const std::string& f2, const std::string& f3, const std::string& f4) {
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, " %-2s %-8s  %-8s  %12s", f1.c_str(), f2.c_str(), f3.c_str(), f4.c_str());
    std::string text(buffer);
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  const bool maximize = lp.sense == Objective::kMaximize;
  out << "* " << (maximize ? "maximization: objective row negated" : "minimization") << '\n';
  out << "NAME          " << name << '\n';
  out << "ROWS\n";
  line("N", "OBJ", "", "");
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const char* kind = lp.constraints[i].sense == RowSense::kLessEqual ? "L"
                       : lp.constraints[i].sense == RowSense::kGreaterEqual ? "G" : "E";
    line(kind, "R" + std::to_string(i + 1), "", "");
  }
  out << "COLUMNS\n";
  std::vector<std::vector<std::pair<std::size_t, Rational>>> by_column(lp.num_variables);
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    for (const auto& [index, coefficient] : lp.constraints[i].lhs.coefficients()) {
      by_column[index].emplace_back(i, coefficient);
    }
  }
  for (std::size_t j = 0; j < lp.num_variables; ++j) {
    const std::string column = "C" + std::to_string(j + 1);
    Rational c = lp.objective.coefficient(static_cast<std::uint32_t>(j));
    if (maximize) c = -c;
    if (sgn(c) != 0) line("", column, "OBJ", number(c));
    for (const auto& [i, coefficient] : by_column[j]) line("", column, "R" + std::to_string(i + 1), number(coefficient));
  }
  out << "RHS\n";
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    if (sgn(lp.constraints[i].rhs) != 0) line("", "RHS", "R" + std::to_string(i + 1), number(lp.constraints[i].rhs));
  }
  bool any_free = false;
  for (std::size_t j = 0; j < lp.num_variables; ++j) any_free = any_free || lp.is_free(j);
  if (any_free) {
    out << "BOUNDS\n";
    for (std::size_t j = 0; j < lp.num_variables; ++j) {
      if (lp.is_free(j)) line("FR", "BND", "C" + std::to_string(j + 1), "");
    }
  }
  out << "ENDATA\n";
}

}  // namespace lpbound
