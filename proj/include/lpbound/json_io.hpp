// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <json.hpp>

#include <span>
#include <vector>

#include "lpbound/bounds.hpp"
#include "lpbound/entropy_cone.hpp"
#include "lpbound/query.hpp"
#include "lpbound/statistic.hpp"

namespace lpbound {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Numbers are read from their literal text, so 0.8 is exactly 4/5; strings
// such as "4/5" are accepted too.
Rational json_rational(const Json& value);
// Integer-valued rationals become JSON integers when they fit, others strings.
Json rational_json(const Rational& value);

NormIndex json_norm(const Json& value);
Json norm_json(const NormIndex& p);

// {"atom":0, "U":["X"], "V":["Y"], "p":2}
StatisticSpec statistic_spec_from_json(const Json& entry, const Query& query);
Json statistic_spec_json(const StatisticSpec& spec, const Query& query);

// Entries carry "b" (bits) or "B" (raw norm).
std::vector<ConcreteStatistic> statistics_from_json(const Json& document, const Query& query);
Json statistics_json(std::span<const ConcreteStatistic> stats, const Query& query);

Json set_function_json(const SetFunction<Rational>& h, std::span<const std::string> names);
SetFunction<Rational> set_function_from_json(const Json& document, std::span<const std::string> names);

Json bound_report_json(const BoundReport& report, std::span<const ConcreteStatistic> stats, const Query& query,
                       bool include_shannon = false);

}  // namespace lpbound
