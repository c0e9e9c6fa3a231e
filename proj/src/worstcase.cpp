// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpbound/error.hpp"
#include "lpbound/evaluator.hpp"

namespace lpbound {

Relation basic_normal_relation(std::span<const std::string> variables, VariableSet v, std::uint64_t size) {
  const std::size_t n = variables.size();
  if (!v.is_subset_of(VariableSet::full(static_cast<unsigned>(n)))) invalid("normal relation set outside the variables");
  std::vector<Value> flat;
  flat.reserve(size * n);
  for (std::uint64_t k = 0; k < size; ++k) {
    for (unsigned x = 0; x < n; ++x) flat.push_back(v.contains(x) ? static_cast<Value>(k) : 0);
  }
  if (size == 0) return Relation("T", {variables.begin(), variables.end()});
  return Relation::from_flat("T", {variables.begin(), variables.end()}, std::move(flat));
}

Relation domain_product(const Relation& left, const Relation& right) {
  if (left.columns() != right.columns()) invalid("domain product needs relations over the same columns");
  Value top = 0;
  for (Value v : right.data()) {
    if (v < 0) invalid("domain product needs nonnegative values");
    top = std::max(top, v);
  }
  for (Value v : left.data()) {
    if (v < 0) invalid("domain product needs nonnegative values");
  }
  const Value radix = top + 1;
  Value left_top = 0;
  for (Value v : left.data()) left_top = std::max(left_top, v);
  if (left_top > (std::numeric_limits<Value>::max() - top) / radix) {
    fail(ErrorKind::kResourceLimit, "domain product values overflow 64 bits");
  }
  const std::size_t width = left.arity();
  std::vector<Value> flat;
  flat.reserve(left.size() * right.size() * width);
  for (std::size_t i = 0; i < left.size(); ++i) {
    auto a = left.row(i);
    for (std::size_t k = 0; k < right.size(); ++k) {
      auto b = right.row(k);
      for (std::size_t c = 0; c < width; ++c) flat.push_back(a[c] * radix + b[c]);
    }
  }
  if (flat.empty()) return Relation(left.name(), left.columns());
  return Relation::from_flat(left.name(), left.columns(), std::move(flat));
}

WorstCase worst_case_database(const Query& query, std::span<const ConcreteStatistic> stats,
                              const WorstCaseOptions& options) {
  for (const auto& stat : stats) {
    validate_statistic(query, stat.spec);
    if (!stat.spec.is_simple()) invalid("the worst-case construction needs simple statistics (|U| <= 1)");
  }
  BoundReport bound = log_bound(query, stats, Cone::kNormal);
  if (bound.status == LpStatus::kUnbounded) invalid("the statistics leave the output unbounded");
  if (bound.status == LpStatus::kInfeasible) invalid("the statistics are infeasible");

  WorstCase result;
  const auto& names = query.variables();
  std::uint64_t total = 1;
  for (std::size_t g = 0; g < bound.generators.size(); ++g) {
    const Rational& coefficient = bound.generator_coefficients[g];
    if (sgn(coefficient) <= 0) continue;
    ++result.report.support;
    ProductFactor factor{bound.generators[g], floor_exp2(coefficient), coefficient};
    if (factor.size >= 2) {
      if (total > options.max_tuples / factor.size) {
        fail(ErrorKind::kResourceLimit, "worst-case relation would exceed " + std::to_string(options.max_tuples) +
                                            " tuples");
      }
      total *= factor.size;
      result.factors.push_back(factor);
    }
  }

  Relation witness = basic_normal_relation(names, VariableSet(), 1);
  for (const auto& factor : result.factors) {
    witness = domain_product(witness, basic_normal_relation(names, factor.variables, factor.size));
  }
  witness.rename("T");
  result.witness = witness;

  for (const auto& atom : query.atoms()) {
    std::vector<std::size_t> columns(atom.variables.begin(), atom.variables.end());
    Relation projected = project(witness, columns);
    projected.rename(atom.relation);
    if (result.database.contains(atom.relation)) {
      if (!(result.database.at(atom.relation) == projected)) {
        invalid("relation " + atom.relation + " is used by atoms whose projections differ; self-joins are not "
                "supported by the construction");
      }
      continue;
    }
    result.database.add(std::move(projected));
  }

  JoinOptions count_only;
  count_only.count_only = true;
  const std::uint64_t achieved = generic_join(query, result.database, count_only).count;

  WorstCaseReport& report = result.report;
  report.log_bound = bound.log_bound;
  report.bound = bound.bound();
  report.achieved = achieved;
  report.gap_log2 = bound.log_bound.get_d() - std::log2(static_cast<double>(achieved));
  Satisfaction satisfaction = satisfies(query, result.database, stats);
  report.satisfies_statistics = satisfaction.satisfied;
  report.statistic_slack = satisfaction.slack;
  return result;
}

std::string decode_value(Value value, std::span<const ProductFactor> factors) {
  if (factors.empty()) return std::to_string(value);
  std::vector<Value> digits(factors.size());
  for (std::size_t k = factors.size(); k-- > 0;) {
    const auto radix = static_cast<Value>(factors[k].size);
    digits[k] = value % radix;
    value /= radix;
  }
  std::string out = "(";
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(digits[k]);
  }
  return out + ")";
}

void export_database(const WorstCase& worst_case, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& [name, relation] : worst_case.database.relations()) {
    auto decoded = std::make_shared<Dictionary>();
    std::vector<Value> flat;
    for (Value v : relation.data()) flat.push_back(decoded->intern(decode_value(v, worst_case.factors)));
    Relation rendered = Relation::from_flat(name, relation.columns(), std::move(flat));
    rendered.set_dictionary(decoded);
    write_relation(rendered, directory / (name + ".csv"));
  }
}

}  // namespace lpbound
