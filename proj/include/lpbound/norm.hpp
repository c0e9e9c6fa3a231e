// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <string_view>

#include "lpbound/rational.hpp"

namespace lpbound {

// Index p of an l_p norm: a positive rational or infinity.
class NormIndex {
 public:
  static NormIndex infinity() { return NormIndex(); }
  explicit NormIndex(const Rational& p);
  explicit NormIndex(long p) : NormIndex(Rational(p)) {}

  // "inf", "∞", "2", "3/2", "2.5".
  static NormIndex parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  const Rational& value() const;
  // 1/p, and 0 for infinity.
  Rational inverse() const;
  double as_double() const;
  std::string to_string() const;

  friend bool operator==(const NormIndex& a, const NormIndex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  // Orders finite values ascending, infinity last.
  friend bool operator<(const NormIndex& a, const NormIndex& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

 private:
  NormIndex() : infinite_(true) {}
  bool infinite_;
  Rational value_;
};

}  // namespace lpbound
