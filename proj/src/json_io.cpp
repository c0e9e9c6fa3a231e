// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/json_io.hpp"

#include <cmath>
#include <limits>

#include "lpbound/error.hpp"

namespace lpbound {
namespace {

std::vector<std::string> string_list(const Json& value, const char* field) {
  if (!value.is_array()) invalid(std::string("statistic field '") + field + "' must be an array of variable names");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) invalid(std::string("statistic field '") + field + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool is_power_of_two(const mpz_class& z) { return z > 0 && mpz_popcount(z.get_mpz_t()) == 1; }

// log2 of a raw norm value, exact for powers of two and rounded up otherwise.
Rational log2_of(const Rational& raw) {
  if (sgn(raw) <= 0) invalid("raw norm B must be positive");
  if (is_power_of_two(raw.get_num()) && is_power_of_two(raw.get_den())) {
    const long up = static_cast<long>(mpz_sizeinbase(raw.get_num_mpz_t(), 2)) - 1;
    const long down = static_cast<long>(mpz_sizeinbase(raw.get_den_mpz_t(), 2)) - 1;
    return Rational(up - down);
  }
  const double bits = std::log2(raw.get_d());
  Rational value = dyadic(bits);
  if (cmp(value, bits) < 0) value += Rational(mpz_class(1), mpz_class(1) << kDyadicBits);
  value.canonicalize();
  return value;
}

}  // namespace

Rational json_rational(const Json& value) {
  if (value.is_number_integer()) return Rational(mpz_class(value.dump(), 10));
  if (value.is_number_float()) {
    if (!std::isfinite(value.get<double>())) invalid("non-finite number");
    return parse_rational(value.dump());
  }
  if (value.is_string()) return parse_rational(value.get<std::string>());
  invalid("expected a number or a rational string, got " + value.dump());
}

Json rational_json(const Rational& value) {
  if (value.get_den() == 1 && value.get_num().fits_slong_p()) return Json(value.get_num().get_si());
  return Json(value.get_str());
}

NormIndex json_norm(const Json& value) {
  if (value.is_string()) return NormIndex::parse(value.get<std::string>());
  return NormIndex(json_rational(value));
}

Json norm_json(const NormIndex& p) {
  if (p.is_infinite()) return "inf";
  return rational_json(p.value());
}

StatisticSpec statistic_spec_from_json(const Json& entry, const Query& query) {
  if (!entry.is_object()) invalid("each statistic must be a JSON object");
  StatisticSpec spec;
  if (entry.contains("atom")) {
    if (!entry["atom"].is_number_integer()) invalid("statistic 'atom' must be an integer");
    const auto atom = entry["atom"].get<long long>();
    if (atom < 0) invalid("statistic atom index must be nonnegative");
    spec.atom = static_cast<std::size_t>(atom);
  } else if (entry.contains("relation") && entry["relation"].is_string()) {
    // A relation name identifies the atom only when it occurs once.
    const auto name = entry["relation"].get<std::string>();
    std::size_t matches = 0;
    for (std::size_t i = 0; i < query.atoms().size(); ++i) {
      if (query.atoms()[i].relation == name) spec.atom = i, ++matches;
    }
    if (matches != 1) invalid("relation '" + name + "' does not name exactly one atom; give 'atom'");
  } else {
    invalid("statistic needs 'atom' or 'relation'");
  }
  if (entry.contains("U")) spec.given = query.variable_set(string_list(entry["U"], "U"));
  if (!entry.contains("V")) invalid("statistic needs a 'V' array");
  spec.target = query.variable_set(string_list(entry["V"], "V"));
  if (!entry.contains("p")) invalid("statistic needs 'p'");
  spec.p = json_norm(entry["p"]);
  validate_statistic(query, spec);
  return spec;
}

Json statistic_spec_json(const StatisticSpec& spec, const Query& query) {
  Json entry;
  entry["atom"] = spec.atom;
  entry["relation"] = query.atoms().at(spec.atom).relation;
  entry["U"] = query.names(spec.given);
  entry["V"] = query.names(spec.target);
  entry["p"] = norm_json(spec.p);
  return entry;
}

std::vector<ConcreteStatistic> statistics_from_json(const Json& document, const Query& query) {
  const Json& list = document.is_object() && document.contains("statistics") ? document["statistics"] : document;
  if (!list.is_array()) invalid("statistics must be a JSON array");
  std::vector<ConcreteStatistic> stats;
  for (const auto& entry : list) {
    ConcreteStatistic stat{statistic_spec_from_json(entry, query), Rational(0)};
    if (entry.contains("b_exact")) stat.log_bound = json_rational(entry["b_exact"]);
    else if (entry.contains("b")) stat.log_bound = json_rational(entry["b"]);
    else if (entry.contains("B")) stat.log_bound = log2_of(json_rational(entry["B"]));
    else invalid("statistic needs 'b' (bits) or 'B' (raw norm)");
    stats.push_back(std::move(stat));
  }
  return stats;
}

Json statistics_json(std::span<const ConcreteStatistic> stats, const Query& query) {
  Json list = Json::array();
  for (const auto& stat : stats) {
    Json entry = statistic_spec_json(stat.spec, query);
    entry["b"] = stat.log_bound.get_d();
    entry["b_exact"] = stat.log_bound.get_str();
    list.push_back(std::move(entry));
  }
  return list;
}

Json set_function_json(const SetFunction<Rational>& h, std::span<const std::string> names) {
  Json out = Json::object();
  for (std::uint32_t w = 0; w < h.size(); ++w) out[subset_key(VariableSet(w), names)] = rational_json(h[VariableSet(w)]);
  return out;
}

SetFunction<Rational> set_function_from_json(const Json& document, std::span<const std::string> names) {
  if (!document.is_object()) invalid("set function must be a JSON object keyed by variable lists");
  SetFunction<Rational> h(static_cast<unsigned>(names.size()));
  std::vector<bool> seen(h.size(), false);
  for (const auto& [key, value] : document.items()) {
    const VariableSet s = parse_subset_key(key, names);
    if (seen[s.bits()]) invalid("set function key '" + key + "' repeats a subset");
    seen[s.bits()] = true;
    h[s] = json_rational(value);
  }
  for (std::uint32_t w = 1; w < h.size(); ++w) {
    if (!seen[w]) invalid("set function is missing subset '" + subset_key(VariableSet(w), names) + "'");
  }
  return h;
}

Json bound_report_json(const BoundReport& report, std::span<const ConcreteStatistic> stats, const Query& query,
                       bool include_shannon) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["status"] = to_string(report.status);
  out["cone"] = to_string(report.cone);
  out["stats_used"] = stats.size();
  if (report.optimal()) {
    out["log2_bound"] = report.log_bound.get_d();
    out["log2_bound_exact"] = report.log_bound.get_str();
    const double bound = report.bound();
    out["bound"] = std::isfinite(bound) ? Json(bound) : Json(nullptr);
    Json certificate = Json::array();
    for (std::size_t i = 0; i < stats.size(); ++i) {
      if (sgn(report.weights[i]) == 0) continue;
      Json entry = statistic_spec_json(stats[i].spec, query);
      entry["index"] = i;
      entry["weight"] = report.weights[i].get_d();
      entry["weight_exact"] = report.weights[i].get_str();
      certificate.push_back(std::move(entry));
    }
    out["certificate"] = std::move(certificate);
    out["optimum"] = set_function_json(report.optimum, query.variables());
    if (include_shannon && !report.shannon_weights.empty()) {
      Json shannon = Json::array();
      auto rows = shannon_constraints(query.num_variables());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (sgn(report.shannon_weights[r]) == 0) continue;
        shannon.push_back({{"inequality", rows[r].describe(query.variables())},
                           {"weight", report.shannon_weights[r].get_d()},
                           {"weight_exact", report.shannon_weights[r].get_str()}});
      }
      out["shannon"] = std::move(shannon);
    }
  } else {
    out["log2_bound"] = nullptr;
    out["bound"] = nullptr;
    out["certificate"] = Json::array();
  }
  out["warnings"] = report.warnings;
  out["pivots"] = report.pivots;
  return out;
}

}  // namespace lpbound
