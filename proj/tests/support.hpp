// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

// Fixture builders shared by the unit and acceptance tests.

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lpbound/query.hpp"
#include "lpbound/relation.hpp"
#include "lpbound/statistic.hpp"

namespace lpbound::testing {

inline StatisticSpec spec(const Query& q, std::size_t atom, std::vector<std::string> given,
                          std::vector<std::string> target, NormIndex p) {
  return StatisticSpec{atom, q.variable_set(given), q.variable_set(target), p};
}

inline ConcreteStatistic concrete(StatisticSpec s, Rational b) { return ConcreteStatistic{s, std::move(b)}; }

inline Relation make_relation(std::string name, std::size_t arity, std::vector<std::vector<Value>> rows) {
  std::vector<std::string> columns;
  for (std::size_t i = 0; i < arity; ++i) columns.push_back("c" + std::to_string(i));
  return Relation(std::move(name), std::move(columns), std::move(rows));
}

inline Relation random_relation(std::mt19937_64& rng, std::string name, std::size_t arity, std::size_t max_size,
                                Value domain) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_size);
  std::uniform_int_distribution<Value> value_dist(0, domain - 1);
  const std::size_t target = size_dist(rng);
  std::vector<std::vector<Value>> rows;
  for (std::size_t i = 0; i < target; ++i) {
    std::vector<Value> row(arity);
    for (auto& v : row) v = value_dist(rng);
    rows.push_back(std::move(row));
  }
  return make_relation(std::move(name), arity, std::move(rows));
}

// Path, triangle, star or 4-cycle over binary atoms with distinct relations.
inline Query random_shape(std::mt19937_64& rng, bool with_cycle4 = false) {
  static const std::vector<std::string> shapes = {
      "Q(A,B,C) :- R(A,B), S(B,C).",
      "Q(A,B,C,D) :- R(A,B), S(B,C), T(C,D).",
      "Q(A,B,C) :- R(A,B), S(B,C), T(C,A).",
      "Q(A,B,C) :- R(A,B), S(A,C).",
      "Q(A,B,C,D) :- R(A,B), S(A,C), T(A,D).",
      "Q(A,B,C,D) :- R(A,B), S(B,C), T(C,D), U(D,A).",
  };
  std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - (with_cycle4 ? 1 : 2));
  return Query::parse(shapes[pick(rng)]);
}

inline Database random_database(std::mt19937_64& rng, const Query& q, std::size_t max_size, Value domain) {
  Database db;
  std::set<std::string> added;
  for (const auto& atom : q.atoms()) {
    if (!added.insert(atom.relation).second) continue;
    db.add(random_relation(rng, atom.relation, atom.variables.size(), max_size, domain));
  }
  return db;
}

}  // namespace lpbound::testing
