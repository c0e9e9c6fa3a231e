// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpbound/rational.hpp"

namespace lpbound {

// Power sums p_k = sum_i d_i^k for k = 1..m, where m is the sequence length.
// p_k is the k-th power of the l_k norm.
std::vector<Rational> sequence_to_power_sums(std::span<const std::uint64_t> degrees);

// Elementary symmetric polynomials e_1..e_m from power sums via Newton's
// identities.
std::vector<Rational> elementary_from_power_sums(std::span<const Rational> power_sums);

// Recovers the non-increasing nonnegative real sequence whose first m power
// sums are given. Values within 1e-6 of an integer are snapped to it. Throws
// when no such real sequence exists.
std::vector<double> power_sums_to_sequence(std::span<const Rational> power_sums);

// Univariate polynomial with rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const noexcept { return coefficients_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return coefficients_; }
  const Rational& leading() const { return coefficients_.back(); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  // Quotient and remainder of Euclidean division.
  static std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b);
  // Monic greatest common divisor.
  static Polynomial gcd(Polynomial a, Polynomial b);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coefficients_;
};

// Square-free factors f_1, f_2, ... with f = c * prod f_i^i.
std::vector<Polynomial> square_free_decomposition(const Polynomial& f);

// Real roots of a square-free polynomial, ascending, each within 2^-30.
std::vector<double> real_roots(const Polynomial& square_free);

}  // namespace lpbound
