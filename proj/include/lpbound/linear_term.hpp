// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "lpbound/rational.hpp"

namespace lpbound {

// Sparse linear form over indexed unknowns. Zero coefficients are never stored.
class LinearTerm {
 public:
  using Map = std::map<std::uint32_t, Rational>;

  LinearTerm() = default;

  void add(std::uint32_t index, const Rational& coefficient) {
    if (sgn(coefficient) == 0) return;
    auto [it, inserted] = coefficients_.try_emplace(index, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (sgn(it->second) == 0) coefficients_.erase(it);
    }
  }

  void add(const LinearTerm& other, const Rational& scale = Rational(1)) {
    for (const auto& [index, coefficient] : other.coefficients_) add(index, coefficient * scale);
  }

  Rational coefficient(std::uint32_t index) const {
    auto it = coefficients_.find(index);
    return it == coefficients_.end() ? Rational(0) : it->second;
  }

  template <typename T>
  T evaluate(std::span<const T> point) const {
    T sum{};
    for (const auto& [index, coefficient] : coefficients_) sum += T(coefficient) * point[index];
    return sum;
  }

  const Map& coefficients() const noexcept { return coefficients_; }
  bool empty() const noexcept { return coefficients_.empty(); }
  std::size_t size() const noexcept { return coefficients_.size(); }

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;

 private:
  Map coefficients_;
};

template <>
inline double LinearTerm::evaluate<double>(std::span<const double> point) const {
  double sum = 0.0;
  for (const auto& [index, coefficient] : coefficients_) sum += coefficient.get_d() * point[index];
  return sum;
}

}  // namespace lpbound
