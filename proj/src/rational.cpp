// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "lpbound/error.hpp"
#include "lpbound/norm.hpp"

namespace lpbound {
namespace {

Rational pow10(long exponent) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) return Rational(scale);
  return Rational(mpz_class(1), scale);
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits.push_back(text[pos++]);
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits.push_back(text[pos++]);
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) fail(ErrorKind::kParse, "malformed number '" + std::string(whole) + "'");
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    long value = 0;
    bool exp_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos++] - '0');
      exp_digit = true;
      if (value > 100000) fail(ErrorKind::kParse, "exponent too large in '" + std::string(whole) + "'");
    }
    if (!exp_digit) fail(ErrorKind::kParse, "malformed exponent in '" + std::string(whole) + "'");
    exponent += exp_negative ? -value : value;
  }
  if (pos != text.size()) fail(ErrorKind::kParse, "malformed number '" + std::string(whole) + "'");
  Rational result(mpz_class(digits, 10));
  result *= pow10(exponent);
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational dyadic(double value, int bits) {
  if (!std::isfinite(value)) invalid("cannot convert a non-finite value to a rational");
  mpz_class numerator(std::nearbyint(std::ldexp(value, bits)));
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  Rational result(numerator, denominator);
  result.canonicalize();
  return result;
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(ErrorKind::kParse, "empty number");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, text);
  Rational numerator = parse_decimal(text.substr(0, slash), text);
  Rational denominator = parse_decimal(text.substr(slash + 1), text);
  if (sgn(denominator) == 0) fail(ErrorKind::kParse, "zero denominator in '" + std::string(text) + "'");
  Rational result = numerator / denominator;
  result.canonicalize();
  return result;
}

std::string to_string(const Rational& value) {
  Rational copy = value;
  copy.canonicalize();
  return copy.get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

unsigned long long floor_exp2(const Rational& value) {
  double exponent = value.get_d();
  if (exponent > 62) fail(ErrorKind::kResourceLimit, "2^" + value.get_str() + " exceeds 64-bit range");
  double power = std::exp2(exponent);
  return static_cast<unsigned long long>(std::floor(power * (1.0 + 1e-10)));
}

// NormIndex

NormIndex::NormIndex(const Rational& p) : infinite_(false), value_(p) {
  value_.canonicalize();
  if (sgn(value_) <= 0) invalid("norm index must be positive, got " + p.get_str());
}

NormIndex NormIndex::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity" || text == "∞") return infinity();
  return NormIndex(parse_rational(text));
}

const Rational& NormIndex::value() const {
  if (infinite_) invalid("infinite norm index has no finite value");
  return value_;
}

Rational NormIndex::inverse() const {
  if (infinite_) return Rational(0);
  Rational result = 1 / value_;
  result.canonicalize();
  return result;
}

double NormIndex::as_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.get_d();
}

std::string NormIndex::to_string() const { return infinite_ ? "inf" : value_.get_str(); }

}  // namespace lpbound
