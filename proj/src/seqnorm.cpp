// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/seqnorm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lpbound/error.hpp"

namespace lpbound {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) { trim(); }

void Polynomial::trim() {
  while (!coefficients_.empty() && sgn(coefficients_.back()) == 0) coefficients_.pop_back();
  for (auto& c : coefficients_) c.canonicalize();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational value = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * x + *it;
  return value;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < coefficients_.size(); ++i) out.push_back(coefficients_[i] * static_cast<long>(i));
  return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> out = coefficients_;
  const Rational lead = leading();
  for (auto& c : out) c /= lead;
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> out(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) out[i] += a.coefficients_[i];
  for (std::size_t i = 0; i < b.coefficients_.size(); ++i) out[i] -= b.coefficients_[i];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }

std::pair<Polynomial, Polynomial> Polynomial::divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) invalid("polynomial division by zero");
  std::vector<Rational> remainder = a.coefficients_;
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> quotient(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational factor = remainder[static_cast<std::size_t>(k + db)] / b.leading();
    quotient[static_cast<std::size_t>(k)] = factor;
    if (sgn(factor) == 0) continue;
    for (int i = 0; i <= db; ++i) {
      remainder[static_cast<std::size_t>(k + i)] -= factor * b.coefficients_[static_cast<std::size_t>(i)];
    }
  }
  remainder.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quotient)), Polynomial(std::move(remainder))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<Polynomial> square_free_decomposition(const Polynomial& f) {
  // Yun's algorithm.
  std::vector<Polynomial> factors;
  if (f.degree() < 1) return factors;
  const Polynomial derivative = f.derivative();
  const Polynomial a0 = Polynomial::gcd(f, derivative);
  Polynomial b = Polynomial::divide(f, a0).first;
  Polynomial c = Polynomial::divide(derivative, a0).first;
  Polynomial d = c - b.derivative();
  while (b.degree() >= 1) {
    Polynomial a = Polynomial::gcd(b, d);
    factors.push_back(a);
    b = Polynomial::divide(b, a).first;
    c = Polynomial::divide(d, a).first;
    d = c - b.derivative();
  }
  return factors;
}

namespace {

int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
  int changes = 0;
  int previous = 0;
  for (const auto& p : chain) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++changes;
    previous = s;
  }
  return changes;
}

}  // namespace

std::vector<double> real_roots(const Polynomial& square_free) {
  std::vector<double> roots;
  if (square_free.degree() < 1) return roots;
  std::vector<Polynomial> chain{square_free, square_free.derivative()};
  while (chain.back().degree() > 0) {
    chain.push_back(-Polynomial::divide(chain[chain.size() - 2], chain.back()).second);
    if (chain.back().is_zero()) {
      chain.pop_back();
      break;
    }
  }
  // Distinct roots in (lo, hi].
  auto count = [&](const Rational& lo, const Rational& hi) { return sign_changes(chain, lo) - sign_changes(chain, hi); };

  Rational bound = 0;
  for (const auto& c : square_free.coefficients()) bound = std::max(bound, Rational(abs(c / square_free.leading())));
  bound += 1;
  const Rational width(mpz_class(1), mpz_class(1) << 30);

  std::function<void(Rational, Rational)> isolate = [&](Rational lo, Rational hi) {
    const int k = count(lo, hi);
    if (k == 0) return;
    if (k > 1) {
      Rational mid = (lo + hi) / 2;
      isolate(lo, mid);
      isolate(mid, hi);
      return;
    }
    while (hi - lo > width) {
      Rational mid = (lo + hi) / 2;
      if (sgn(square_free(mid)) == 0) {
        lo = hi = mid;
        break;
      }
      if (count(lo, mid) == 1) hi = mid;
      else lo = mid;
    }
    roots.push_back(Rational((lo + hi) / 2).get_d());
  };
  isolate(-bound, bound);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Rational> sequence_to_power_sums(std::span<const std::uint64_t> degrees) {
  std::vector<Rational> sums(degrees.size());
  for (std::uint64_t d : degrees) {
    mpz_class term = 1;
    for (std::size_t k = 0; k < degrees.size(); ++k) {
      term *= static_cast<unsigned long>(d);
      sums[k] += term;
    }
  }
  return sums;
}

std::vector<Rational> elementary_from_power_sums(std::span<const Rational> power_sums) {
  const std::size_t m = power_sums.size();
  std::vector<Rational> e(m + 1);
  e[0] = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    Rational sum = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      const Rational term = e[k - j] * power_sums[j - 1];
      if (j % 2 == 1) sum += term;
      else sum -= term;
    }
    e[k] = sum / static_cast<long>(k);
    e[k].canonicalize();
  }
  e.erase(e.begin());
  return e;
}

std::vector<double> power_sums_to_sequence(std::span<const Rational> power_sums) {
  const std::size_t m = power_sums.size();
  if (m == 0) return {};
  for (const auto& p : power_sums) {
    if (sgn(p) < 0) invalid("power sums of a nonnegative sequence cannot be negative");
  }
  std::vector<Rational> e = elementary_from_power_sums(power_sums);
  // lambda^m - e1 lambda^(m-1) + e2 lambda^(m-2) - ...
  std::vector<Rational> coefficients(m + 1);
  coefficients[m] = 1;
  for (std::size_t k = 1; k <= m; ++k) coefficients[m - k] = (k % 2 == 1) ? Rational(-e[k - 1]) : e[k - 1];
  const Polynomial characteristic(std::move(coefficients));

  std::vector<double> sequence;
  const auto factors = square_free_decomposition(characteristic);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (double root : real_roots(factors[i])) {
      double value = root;
      const double nearest = std::round(root);
      if (std::fabs(root - nearest) <= 1e-6) value = nearest;
      for (std::size_t r = 0; r <= i; ++r) sequence.push_back(value);
    }
  }
  if (sequence.size() < m) {
    invalid("power sums match no real sequence: " + std::to_string(m - sequence.size()) + " of " +
            std::to_string(m) + " roots are complex");
  }
  for (double v : sequence) {
    if (v < 0) invalid("power sums match a sequence with a negative entry (" + std::to_string(v) + ")");
  }
  std::sort(sequence.begin(), sequence.end(), std::greater<>());
  for (auto& v : sequence) v = v == 0.0 ? 0.0 : v;  // no negative zero
  return sequence;
}

}  // namespace lpbound
