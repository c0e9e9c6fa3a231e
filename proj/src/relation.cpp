// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/relation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

#include "lpbound/error.hpp"

namespace lpbound {
namespace {

struct RowHash {
  std::size_t operator()(const std::vector<Value>& row) const noexcept {
    std::size_t seed = row.size();
    for (Value v : row) {
      seed ^= std::hash<Value>{}(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

}  // namespace

Value Dictionary::intern(std::string_view token) {
  auto it = ids_.find(std::string(token));
  if (it != ids_.end()) return it->second;
  Value id = static_cast<Value>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

std::optional<Value> Dictionary::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Dictionary::token(Value id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    fail(ErrorKind::kNotFound, "no token for id " + std::to_string(id));
  }
  return tokens_[static_cast<std::size_t>(id)];
}

Relation::Relation(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  std::set<std::string> seen;
  for (const auto& column : columns_) {
    if (!seen.insert(column).second) invalid("duplicate column '" + column + "' in relation " + name_);
  }
}

Relation::Relation(std::string name, std::vector<std::string> columns,
                   std::vector<std::vector<Value>> rows)
    : Relation(std::move(name), std::move(columns)) {
  if (arity() == 0) {
    nullary_rows_ = rows.empty() ? 0 : 1;
    duplicates_dropped_ = rows.empty() ? 0 : rows.size() - 1;
    return;
  }
  data_.reserve(rows.size() * arity());
  for (const auto& row : rows) {
    if (row.size() != arity()) {
      invalid("row of width " + std::to_string(row.size()) + " in relation " + name_ + " of arity " +
              std::to_string(arity()));
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  canonicalize();
}

Relation Relation::from_flat(std::string name, std::vector<std::string> columns,
                             std::vector<Value> flat) {
  Relation result(std::move(name), std::move(columns));
  if (result.arity() == 0) invalid("flat construction needs at least one column");
  if (flat.size() % result.arity() != 0) invalid("flat tuple data is not a multiple of the arity");
  result.data_ = std::move(flat);
  result.canonicalize();
  return result;
}

void Relation::canonicalize() {
  const std::size_t width = arity();
  const std::size_t count = data_.size() / width;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(data_.begin() + a * width, data_.begin() + (a + 1) * width,
                                        data_.begin() + b * width, data_.begin() + (b + 1) * width);
  };
  auto equal = [&](std::size_t a, std::size_t b) {
    return std::equal(data_.begin() + a * width, data_.begin() + (a + 1) * width,
                      data_.begin() + b * width);
  };
  if (!std::is_sorted(order.begin(), order.end(), less)) std::sort(order.begin(), order.end(), less);
  std::vector<Value> sorted;
  sorted.reserve(data_.size());
  std::size_t kept = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && equal(order[i], order[i - 1])) continue;
    sorted.insert(sorted.end(), data_.begin() + order[i] * width, data_.begin() + (order[i] + 1) * width);
    ++kept;
  }
  duplicates_dropped_ += count - kept;
  data_ = std::move(sorted);
}

std::size_t Relation::column_index(std::string_view column) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == column) return i;
  }
  fail(ErrorKind::kNotFound, "relation " + name_ + " has no column '" + std::string(column) + "'");
}

Columns Relation::column_indices(std::span<const std::string> names) const {
  Columns result;
  result.reserve(names.size());
  for (const auto& name : names) result.push_back(column_index(name));
  return result;
}

std::string Relation::render(Value value) const {
  if (dictionary_ && value >= 0 && static_cast<std::size_t>(value) < dictionary_->size()) {
    return dictionary_->token(value);
  }
  return std::to_string(value);
}

Relation project(const Relation& relation, std::span<const std::size_t> columns) {
  std::vector<std::string> names;
  for (std::size_t c : columns) {
    if (c >= relation.arity()) invalid("projection column out of range in " + relation.name());
    names.push_back(relation.columns()[c]);
  }
  if (columns.empty()) {
    std::vector<std::vector<Value>> rows;
    if (!relation.empty()) rows.emplace_back();
    Relation result(relation.name(), {}, std::move(rows));
    result.set_dictionary(relation.dictionary());
    return result;
  }
  std::vector<Value> flat;
  flat.reserve(relation.size() * columns.size());
  for (std::size_t i = 0; i < relation.size(); ++i) {
    auto row = relation.row(i);
    for (std::size_t c : columns) flat.push_back(row[c]);
  }
  Relation result = Relation::from_flat(relation.name(), std::move(names), std::move(flat));
  result.set_dictionary(relation.dictionary());
  return result;
}

std::vector<Value> active_domain(const Relation& relation) {
  std::vector<Value> values = relation.data();
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

DegreeSequence degree_sequence(const Relation& relation, std::span<const std::size_t> v_columns,
                               std::span<const std::size_t> u_columns) {
  if (relation.empty()) return {};
  Columns ordered(u_columns.begin(), u_columns.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  const std::size_t key_width = ordered.size();
  for (std::size_t c : v_columns) {
    if (std::find(ordered.begin(), ordered.end(), c) == ordered.end()) ordered.push_back(c);
  }
  std::sort(ordered.begin() + static_cast<std::ptrdiff_t>(key_width), ordered.end());
  ordered.erase(std::unique(ordered.begin() + static_cast<std::ptrdiff_t>(key_width), ordered.end()),
                ordered.end());

  Relation projected = project(relation, ordered);
  DegreeSequence degrees;
  if (key_width == 0) {
    degrees.push_back(projected.size());
    return degrees;
  }
  std::uint64_t run = 0;
  for (std::size_t i = 0; i < projected.size(); ++i) {
    auto row = projected.row(i);
    if (i > 0) {
      auto prev = projected.row(i - 1);
      if (!std::equal(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(key_width), prev.begin())) {
        degrees.push_back(run);
        run = 0;
      }
    }
    ++run;
  }
  degrees.push_back(run);
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  return degrees;
}

DegreeSequence degree_sequence(const Relation& relation, std::span<const std::string> v_columns,
                               std::span<const std::string> u_columns) {
  Columns v = relation.column_indices(v_columns);
  Columns u = relation.column_indices(u_columns);
  return degree_sequence(relation, v, u);
}

double lp_norm(std::span<const std::uint64_t> degrees, const NormIndex& p) {
  if (degrees.empty()) return -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (sorted.front() == 0) return -std::numeric_limits<double>::infinity();
  const double top = static_cast<double>(sorted.front());
  if (p.is_infinite()) return std::log2(top);
  const double exponent = p.as_double();
  // Factor out the largest degree so large p cannot overflow.
  double sum = 0.0;
  for (std::uint64_t d : sorted) sum += std::pow(static_cast<double>(d) / top, exponent);
  return std::log2(top) + std::log2(sum) / exponent;
}

double lp_norm(const Relation& relation, std::span<const std::size_t> v_columns,
               std::span<const std::size_t> u_columns, const NormIndex& p) {
  DegreeSequence degrees = degree_sequence(relation, v_columns, u_columns);
  return lp_norm(degrees, p);
}

EmpiricalEntropy empirical_entropy(const Relation& relation, std::span<const double> weights) {
  const std::size_t arity = relation.arity();
  if (arity > 20) fail(ErrorKind::kResourceLimit, "entropy table over more than 20 columns");
  if (relation.empty()) invalid("entropy of an empty relation is undefined");
  std::vector<double> probability(relation.size(), 1.0 / static_cast<double>(relation.size()));
  if (!weights.empty()) {
    if (weights.size() != relation.size()) invalid("one weight per tuple is required");
    double total = 0.0;
    for (double w : weights) {
      if (!(w > 0.0) || !std::isfinite(w)) invalid("tuple weights must be positive and finite");
      total += w;
    }
    for (std::size_t i = 0; i < weights.size(); ++i) probability[i] = weights[i] / total;
  }

  EmpiricalEntropy result;
  result.columns = relation.columns();
  const std::uint32_t subsets = 1u << arity;
  result.values.assign(subsets, 0.0);
  std::vector<Value> key;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    std::unordered_map<std::vector<Value>, double, RowHash> marginal;
    marginal.reserve(relation.size());
    for (std::size_t i = 0; i < relation.size(); ++i) {
      auto row = relation.row(i);
      key.clear();
      for (std::size_t c = 0; c < arity; ++c) {
        if (mask & (1u << c)) key.push_back(row[c]);
      }
      marginal[key] += probability[i];
    }
    double h = 0.0;
    for (const auto& [_, q] : marginal) {
      if (q > 0.0) h -= q * std::log2(q);
    }
    result.values[mask] = std::max(0.0, h);
  }
  return result;
}

AlphaBetaRelation generate_alpha_beta(std::uint64_t size, double alpha, double beta) {
  if (size == 0) invalid("relation size must be positive");
  if (!(alpha > 0.0) || !(beta > 0.0)) invalid("alpha and beta must be positive");
  const double m = static_cast<double>(size);
  const auto heavy = static_cast<std::uint64_t>(std::llround(std::pow(m, alpha)));
  const auto degree = static_cast<std::uint64_t>(std::llround(std::pow(m, beta)));
  if (heavy == 0 || degree == 0) invalid("alpha and beta round to an empty block");
  const std::uint64_t block = heavy * degree;
  if (2 * block > size) {
    invalid("heavy blocks need " + std::to_string(2 * block) + " tuples but M = " + std::to_string(size));
  }
  const std::uint64_t light = size - 2 * block;

  std::vector<Value> flat;
  flat.reserve(2 * size);
  const auto a = static_cast<Value>(heavy);
  const auto b = static_cast<Value>(degree);
  for (Value i = 0; i < a; ++i) {
    for (Value j = 0; j < b; ++j) {
      const Value hub = a + i * b + j;
      flat.insert(flat.end(), {i, hub});
      flat.insert(flat.end(), {hub, i});
    }
  }
  const Value offset = a + a * b;
  for (Value k = 0; k < static_cast<Value>(light); ++k) flat.insert(flat.end(), {offset + k, offset + k});

  AlphaBetaRelation result;
  result.relation = Relation::from_flat("R", {"X", "Y"}, std::move(flat));
  result.heavy_count = heavy;
  result.heavy_degree = degree;
  result.light_count = light;
  return result;
}

void Database::add(Relation relation) {
  std::string name = relation.name();
  if (relations_.count(name)) invalid("relation " + name + " already present");
  relations_.emplace(std::move(name), std::move(relation));
}

bool Database::contains(std::string_view name) const { return relations_.find(name) != relations_.end(); }

const Relation& Database::at(std::string_view name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) fail(ErrorKind::kNotFound, "no relation named " + std::string(name));
  return it->second;
}

}  // namespace lpbound
