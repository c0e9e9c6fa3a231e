// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>

#include "lpbound/norm.hpp"
#include "lpbound/rational.hpp"
#include "lpbound/variable_set.hpp"

namespace lpbound {

// An l_p norm of the degree sequence deg(target | given) on one atom.
struct StatisticSpec {
  std::size_t atom = 0;
  VariableSet given;
  VariableSet target;
  NormIndex p = NormIndex::infinity();

  // Simple statistics condition on at most one variable.
  bool is_simple() const noexcept { return given.size() <= 1; }
  VariableSet variables() const noexcept { return given | target; }

  friend bool operator==(const StatisticSpec&, const StatisticSpec&) = default;
};

// A statistic with its value: log2 of the norm, in bits.
struct ConcreteStatistic {
  StatisticSpec spec;
  Rational log_bound;
};

}  // namespace lpbound
