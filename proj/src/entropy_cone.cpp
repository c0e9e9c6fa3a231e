// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/entropy_cone.hpp"

#include <algorithm>

namespace lpbound {

std::string to_string(Cone cone) {
  switch (cone) {
    case Cone::kPolymatroid: return "polymatroid";
    case Cone::kNormal: return "normal";
    case Cone::kModular: return "modular";
  }
  return "unknown";
}

Cone parse_cone(std::string_view text) {
  if (text == "polymatroid" || text == "gamma" || text == "Gamma") return Cone::kPolymatroid;
  if (text == "normal" || text == "N") return Cone::kNormal;
  if (text == "modular" || text == "M") return Cone::kModular;
  invalid("unknown cone '" + std::string(text) + "' (expected polymatroid, normal or modular)");
}

SetFunction<Rational> step_function(unsigned n, VariableSet v) {
  if (!v.is_subset_of(VariableSet::full(n))) invalid("step function set outside the variables");
  SetFunction<Rational> h(n);
  for (std::uint32_t w = 0; w < h.size(); ++w) {
    if (VariableSet(w).intersects(v)) h[VariableSet(w)] = 1;
  }
  return h;
}

std::vector<VariableSet> cone_generators(unsigned n, Cone cone) {
  std::vector<VariableSet> generators;
  switch (cone) {
    case Cone::kPolymatroid:
      invalid("the polymatroid cone is described by inequalities, not generators");
    case Cone::kNormal:
      for (std::uint32_t v = 1; v < (1u << n); ++v) generators.emplace_back(v);
      break;
    case Cone::kModular:
      for (unsigned x = 0; x < n; ++x) generators.push_back(VariableSet::singleton(x));
      break;
  }
  return generators;
}

LinearTerm stat_term_coefficients(const StatisticSpec& stat) {
  LinearTerm term;
  term.add(stat.given.bits(), stat.p.inverse() - 1);
  term.add((stat.given | stat.target).bits(), Rational(1));
  return term;
}

std::string ShannonInequality::describe(std::span<const std::string> names) const {
  auto name = [&](unsigned v) { return v < names.size() ? names[v] : "x" + std::to_string(v); };
  if (kind == Kind::kMonotonicity) return "h(all) >= h(all - " + name(x) + ")";
  return "I(" + name(x) + ";" + name(y) + "|" + subset_key(base, names) + ") >= 0";
}

std::vector<ShannonInequality> shannon_constraints(unsigned n) {
  std::vector<ShannonInequality> rows;
  const VariableSet all = VariableSet::full(n);
  for (unsigned x = 0; x < n; ++x) {
    ShannonInequality row{ShannonInequality::Kind::kMonotonicity, x, x, all.without(x), {}};
    row.terms.add(all.bits(), Rational(1));
    row.terms.add(all.without(x).bits(), Rational(-1));
    rows.push_back(std::move(row));
  }
  for (unsigned x = 0; x < n; ++x) {
    for (unsigned y = x + 1; y < n; ++y) {
      const VariableSet rest = all.without(x).without(y);
      // Enumerate subsets of rest.
      for (std::uint32_t w = rest.bits();; w = (w - 1) & rest.bits()) {
        const VariableSet base(w);
        ShannonInequality row{ShannonInequality::Kind::kSubmodularity, x, y, base, {}};
        row.terms.add(base.with(x).bits(), Rational(1));
        row.terms.add(base.with(y).bits(), Rational(1));
        row.terms.add(base.with(x).with(y).bits(), Rational(-1));
        row.terms.add(base.bits(), Rational(-1));
        rows.push_back(std::move(row));
        if (w == 0) break;
      }
    }
  }
  return rows;
}

bool is_polymatroid(const SetFunction<Rational>& h) {
  if (sgn(h[VariableSet()]) != 0) return false;
  for (const auto& row : shannon_constraints(h.num_variables())) {
    if (sgn(row.terms.evaluate<Rational>(h.values())) < 0) return false;
  }
  return true;
}

SetFunction<Rational> step_coordinates(const SetFunction<Rational>& h) {
  const unsigned n = h.num_variables();
  if (sgn(h[VariableSet()]) != 0) invalid("set function with h(empty) != 0 has no step coordinates");
  const VariableSet all = VariableSet::full(n);
  // f(S) = h(all) - h(all - S) = sum of coefficients over nonempty V inside S.
  SetFunction<Rational> coordinates(n);
  for (std::uint32_t s = 0; s < coordinates.size(); ++s) {
    coordinates[VariableSet(s)] = h[all] - h[all - VariableSet(s)];
  }
  for (unsigned bit = 0; bit < n; ++bit) {
    for (std::uint32_t s = 0; s < coordinates.size(); ++s) {
      if (s & (1u << bit)) coordinates[VariableSet(s)] -= coordinates[VariableSet(s ^ (1u << bit))];
    }
  }
  return coordinates;
}

bool is_normal(const SetFunction<Rational>& h) {
  if (sgn(h[VariableSet()]) != 0) return false;
  auto coordinates = step_coordinates(h);
  return std::all_of(coordinates.values().begin(), coordinates.values().end(),
                     [](const Rational& a) { return sgn(a) >= 0; });
}

bool is_modular(const SetFunction<Rational>& h) {
  if (sgn(h[VariableSet()]) != 0) return false;
  const unsigned n = h.num_variables();
  for (unsigned x = 0; x < n; ++x) {
    if (sgn(h[VariableSet::singleton(x)]) < 0) return false;
  }
  for (std::uint32_t w = 1; w < h.size(); ++w) {
    Rational sum = 0;
    for (unsigned x : VariableSet(w).elements()) sum += h[VariableSet::singleton(x)];
    if (sum != h[VariableSet(w)]) return false;
  }
  return true;
}

bool in_cone(const SetFunction<Rational>& h, Cone cone) {
  switch (cone) {
    case Cone::kPolymatroid: return is_polymatroid(h);
    case Cone::kNormal: return is_normal(h);
    case Cone::kModular: return is_modular(h);
  }
  return false;
}

SetFunction<Rational> combine_generators(unsigned n, std::span<const VariableSet> generators,
                                         std::span<const Rational> coefficients) {
  if (generators.size() != coefficients.size()) invalid("one coefficient per generator is required");
  SetFunction<Rational> h(n);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (sgn(coefficients[g]) == 0) continue;
    for (std::uint32_t w = 1; w < h.size(); ++w) {
      if (VariableSet(w).intersects(generators[g])) h[VariableSet(w)] += coefficients[g];
    }
  }
  return h;
}

SetFunction<double> to_double(const SetFunction<Rational>& h) {
  SetFunction<double> out(h.num_variables());
  for (std::uint32_t w = 0; w < h.size(); ++w) out[VariableSet(w)] = h[VariableSet(w)].get_d();
  return out;
}

std::string subset_key(VariableSet s, std::span<const std::string> names) {
  std::string key;
  for (unsigned v : s.elements()) {
    if (!key.empty()) key.push_back(',');
    key += v < names.size() ? names[v] : "x" + std::to_string(v);
  }
  return key;
}

VariableSet parse_subset_key(std::string_view key, std::span<const std::string> names) {
  VariableSet s;
  std::size_t start = 0;
  while (start <= key.size()) {
    std::size_t comma = key.find(',', start);
    if (comma == std::string_view::npos) comma = key.size();
    std::string_view token = key.substr(start, comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      auto it = std::find(names.begin(), names.end(), token);
      if (it == names.end()) invalid("unknown variable '" + std::string(token) + "' in key '" + std::string(key) + "'");
      s = s.with(static_cast<unsigned>(it - names.begin()));
    } else if (key.size() > 0) {
      invalid("empty variable name in key '" + std::string(key) + "'");
    }
    start = comma + 1;
  }
  return s;
}

}  // namespace lpbound
