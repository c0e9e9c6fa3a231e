// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "lpbound/error.hpp"
#include "lpbound/linear_term.hpp"
#include "lpbound/rational.hpp"
#include "lpbound/statistic.hpp"
#include "lpbound/variable_set.hpp"

namespace lpbound {

// Real-valued function on the subsets of n variables, indexed by bitmask.
template <typename T>
class SetFunction {
 public:
  SetFunction() = default;
  explicit SetFunction(unsigned n) : n_(n), values_(checked_size(n)) {}

  unsigned num_variables() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }

  T& operator[](VariableSet s) { return values_[s.bits()]; }
  const T& operator[](VariableSet s) const { return values_[s.bits()]; }
  T& at(VariableSet s) { return values_.at(s.bits()); }
  const T& at(VariableSet s) const { return values_.at(s.bits()); }

  std::span<const T> values() const noexcept { return values_; }
  std::span<T> values() noexcept { return values_; }

  SetFunction& operator+=(const SetFunction& other) {
    if (other.n_ != n_) invalid("set functions over different variable counts");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }
  SetFunction& operator*=(const T& scale) {
    for (auto& v : values_) v *= scale;
    return *this;
  }
  friend SetFunction operator+(SetFunction a, const SetFunction& b) { return a += b; }
  friend SetFunction operator*(SetFunction a, const T& scale) { return a *= scale; }
  friend bool operator==(const SetFunction&, const SetFunction&) = default;

 private:
  static std::size_t checked_size(unsigned n) {
    if (n > kMaxVariables) fail(ErrorKind::kResourceLimit, "set function over more than 20 variables");
    return std::size_t{1} << n;
  }

  unsigned n_ = 0;
  std::vector<T> values_;
};

enum class Cone { kPolymatroid, kNormal, kModular };

std::string to_string(Cone cone);
// Accepts "polymatroid"/"gamma", "normal", "modular".
Cone parse_cone(std::string_view text);

// h^V(W) = 1 when W meets V, else 0.
SetFunction<Rational> step_function(unsigned n, VariableSet v);

// The unknowns each cone is parametrized by: all nonempty subsets for the
// normal cone, singletons for the modular cone. The polymatroid cone has no
// finite generator list here and throws.
std::vector<VariableSet> cone_generators(unsigned n, Cone cone);

template <typename T>
T conditional(const SetFunction<T>& h, VariableSet target, VariableSet given) {
  return h[target | given] - h[given];
}

// (1/p) h(U) + h(V|U); the first coefficient is 0 for p = infinity.
template <typename T>
T stat_term(const SetFunction<T>& h, const StatisticSpec& stat) {
  const Rational inverse = stat.p.inverse();
  T weight;
  if constexpr (std::is_same_v<T, double>) {
    weight = inverse.get_d();
  } else {
    weight = T(inverse);
  }
  return weight * h[stat.given] + conditional(h, stat.target, stat.given);
}

// stat_term as a linear form over subset masks.
LinearTerm stat_term_coefficients(const StatisticSpec& stat);

// One elementary Shannon inequality, read as terms >= 0.
struct ShannonInequality {
  enum class Kind { kMonotonicity, kSubmodularity };
  Kind kind;
  // Monotonicity: h(X) - h(X - {x}). Submodularity: I(x;y | base).
  unsigned x = 0;
  unsigned y = 0;
  VariableSet base;
  LinearTerm terms;

  std::string describe(std::span<const std::string> names) const;
};

// n monotonicity rows and C(n,2) 2^(n-2) submodularity rows.
std::vector<ShannonInequality> shannon_constraints(unsigned n);

// Exact membership tests. h(empty) must be 0 in every cone.
bool is_polymatroid(const SetFunction<Rational>& h);
bool is_normal(const SetFunction<Rational>& h);
bool is_modular(const SetFunction<Rational>& h);
bool in_cone(const SetFunction<Rational>& h, Cone cone);

// Unique coefficients a_V with h = sum_V a_V h^V over nonempty V. Exists for
// every h with h(empty) = 0; h is normal iff all are >= 0.
SetFunction<Rational> step_coordinates(const SetFunction<Rational>& h);

// sum_g coefficients[g] * h^{generators[g]}.
SetFunction<Rational> combine_generators(unsigned n, std::span<const VariableSet> generators,
                                         std::span<const Rational> coefficients);

SetFunction<double> to_double(const SetFunction<Rational>& h);

// Names variables by position for rendering keys like "X,Y".
std::string subset_key(VariableSet s, std::span<const std::string> names);
// Inverse of subset_key; the empty string is the empty set.
VariableSet parse_subset_key(std::string_view key, std::span<const std::string> names);

}  // namespace lpbound
