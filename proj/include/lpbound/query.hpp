// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpbound/relation.hpp"
#include "lpbound/statistic.hpp"
#include "lpbound/variable_set.hpp"

namespace lpbound {

struct Atom {
  std::string relation;
  // Query variable bound to each relation column, by position.
  std::vector<unsigned> variables;

  VariableSet variable_set() const;
  // Relation columns holding the given query variables, in variable order.
  Columns columns_of(VariableSet s) const;
};

struct ParseOptions {
  unsigned max_variables = 14;
};

// Full conjunctive query: the head lists every body variable exactly once.
class Query {
 public:
  Query(std::string head, std::vector<std::string> variables, std::vector<Atom> atoms,
        const ParseOptions& options = {});

  // Q(X,Y,Z) :- R(X,Y), S(Y,Z), T(Z,X).   with % line comments.
  static Query parse(std::string_view text, const ParseOptions& options = {});
  static Query load(const std::filesystem::path& path, const ParseOptions& options = {});

  const std::string& head() const noexcept { return head_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  unsigned num_variables() const noexcept { return static_cast<unsigned>(variables_.size()); }
  VariableSet all_variables() const noexcept { return VariableSet::full(num_variables()); }

  std::optional<unsigned> find_variable(std::string_view name) const;
  unsigned variable(std::string_view name) const;
  VariableSet variable_set(std::span<const std::string> names) const;
  std::vector<std::string> names(VariableSet s) const;

  std::string to_string() const;

 private:
  std::string head_;
  std::vector<std::string> variables_;
  std::vector<Atom> atoms_;
};

// Throws unless the statistic names an atom that contains all its variables.
void validate_statistic(const Query& query, const StatisticSpec& stat);

// Length of the shortest cycle in the multigraph with one edge per binary
// atom. Absent when the graph is acyclic or an atom is not binary; the
// diagnostic says which.
struct Girth {
  std::optional<unsigned> length;
  std::string diagnostic;
};
Girth girth(const Query& query);

// Loads <dir>/<relation>.csv (or .tsv) for each relation the query uses.
Database load_database(const Query& query, const std::filesystem::path& directory,
                       const CsvOptions& options = {});

// Throws unless every atom's relation exists with the atom's arity.
void check_database(const Query& query, const Database& database);

const Relation& atom_relation(const Query& query, const Database& database, std::size_t atom);

// log2 of the statistic's norm measured on the database.
double measure(const Query& query, const Database& database, const StatisticSpec& stat);

struct Satisfaction {
  bool satisfied = true;
  std::vector<double> measured;  // log2 norm per statistic
  std::vector<double> slack;      // bound minus measured, in bits
};
inline constexpr double kSatisfactionTolerance = 1e-9;
Satisfaction satisfies(const Query& query, const Database& database,
                       std::span<const ConcreteStatistic> stats);

}  // namespace lpbound
