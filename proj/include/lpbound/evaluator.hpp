// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpbound/query.hpp"
#include "lpbound/relation.hpp"
#include "lpbound/statistic.hpp"

namespace lpbound {

struct JoinOptions {
  // Output tuples allowed before the join gives up.
  std::size_t max_output = 50'000'000;
  // Count without materializing the output.
  bool count_only = false;
};

struct JoinResult {
  Relation output;  // columns are the query variables; empty when count_only
  std::uint64_t count = 0;
  std::uint64_t work = 0;  // search nodes visited
};

// Nested loops over the atoms in query order with a hash index per atom on
// the variables already bound. Used as the reference oracle.
JoinResult brute_force_join(const Query& query, const Database& database, const JoinOptions& options = {});

// Worst-case optimal join binding variables in head order; each atom's tuples
// are sorted by that order and candidate values are intersected across the
// atoms containing the current variable.
JoinResult generic_join(const Query& query, const Database& database, const JoinOptions& options = {});
// Same, with one relation per atom.
JoinResult generic_join(const Query& query, std::span<const Relation* const> atom_relations,
                        const JoinOptions& options = {});

// One piece of a relation split by partition_relation. Every U-group lands in
// exactly one part.
struct Part {
  Relation relation;
  std::uint64_t max_degree = 0;   // l_infinity of deg(V|U) within the part
  std::uint64_t given_count = 0;  // |projection onto U| within the part
};

// Splits R so that each part satisfies given_count * max_degree^p <= 2^(p*log_bound).
// Groups are bucketed by degree into [2^(i-1), 2^i) and packed greedily in
// descending degree order. p = infinity or empty U yields a single part.
std::vector<Part> partition_relation(const Relation& relation, std::span<const std::size_t> given_columns,
                                     std::span<const std::size_t> target_columns, const NormIndex& p,
                                     double log_bound);

struct PartitionedOptions {
  unsigned threads = 0;  // 0 picks the hardware concurrency
  bool count_only = false;
  std::size_t max_output = 50'000'000;
};

struct PartitionedResult {
  Relation output;
  std::uint64_t count = 0;
  std::uint64_t combinations = 0;
  // Parts produced by each statistic on its full relation.
  std::vector<std::size_t> parts_per_statistic;
  std::uint64_t work = 0;
  // Largest ratio of join work to the envelope prod_i (|U_i|^(1/p_i) d_i)^(w_i)
  // over all combinations.
  double max_work_ratio = 0.0;
};

// Evaluates the query as a union of joins over combinations of parts. The
// database must satisfy the statistics and the weights must form a valid
// inequality over the polymatroid cone.
PartitionedResult partitioned_evaluate(const Query& query, const Database& database,
                                       std::span<const ConcreteStatistic> stats, std::span<const Rational> weights,
                                       const PartitionedOptions& options = {});

}  // namespace lpbound
