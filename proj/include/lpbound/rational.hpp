// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lpbound {

using Rational = mpq_class;

// Number of fractional bits kept when a floating value enters exact
// arithmetic.
inline constexpr int kDyadicBits = 40;

// Nearest multiple of 2^-bits. Throws on NaN or infinity.
Rational dyadic(double value, int bits = kDyadicBits);

// Accepts "7", "-3/4", "0.125", "1e-3", "2.5E2".
Rational parse_rational(std::string_view text);

// Canonical "n" or "n/d".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// floor(2^value) with a relative snap of 1e-10 so that a value rounded a hair
// below log2(k) still yields k.
unsigned long long floor_exp2(const Rational& value);

}  // namespace lpbound
