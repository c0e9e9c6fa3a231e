// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lpbound/bounds.hpp"
#include "lpbound/query.hpp"
#include "lpbound/relation.hpp"

namespace lpbound {

// { (k if x in V else 0 for each variable x) : 0 <= k < size } over columns
// named after the query variables.
Relation basic_normal_relation(std::span<const std::string> variables, VariableSet v, std::uint64_t size);

// Pairs tuples of equal width componentwise, encoding (a, b) as a * radix + b
// with radix one more than the largest value of the right operand.
Relation domain_product(const Relation& left, const Relation& right);

struct ProductFactor {
  VariableSet variables;
  std::uint64_t size = 0;  // floor(2^coefficient)
  Rational coefficient;
};

struct WorstCaseReport {
  Rational log_bound;
  double bound = 0.0;
  std::uint64_t achieved = 0;  // |Q(D)|
  double gap_log2 = 0.0;       // log_bound - log2(achieved)
  unsigned support = 0;        // number of nonzero generator coefficients
  bool satisfies_statistics = false;
  std::vector<double> statistic_slack;
};

struct WorstCase {
  Database database;
  Relation witness;  // the product relation over all variables
  std::vector<ProductFactor> factors;
  WorstCaseReport report;
};

struct WorstCaseOptions {
  std::uint64_t max_tuples = 20'000'000;
};

// Builds a database meeting simple statistics whose output is within
// 2^support of the bound, from an optimal normal-cone solution.
WorstCase worst_case_database(const Query& query, std::span<const ConcreteStatistic> stats,
                              const WorstCaseOptions& options = {});

// Mixed-radix digits of a value produced by the factor product, as "(d1,d2)".
std::string decode_value(Value value, std::span<const ProductFactor> factors);

// Writes <dir>/<relation>.csv with decoded values.
void export_database(const WorstCase& worst_case, const std::filesystem::path& directory);

}  // namespace lpbound
