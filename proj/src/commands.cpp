// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpbound/bounds.hpp"
#include "lpbound/error.hpp"
#include "lpbound/evaluator.hpp"
#include "lpbound/seqnorm.hpp"
#include "lpbound/worstcase.hpp"

namespace lpbound::commands {
namespace {

Json finite_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

}  // namespace

Json stats(const Query& query, const Database& database, const Json* specs, std::string_view preset) {
  std::vector<StatisticSpec> list;
  if (specs) {
    const Json& array = specs->is_object() && specs->contains("statistics") ? (*specs)["statistics"] : *specs;
    if (!array.is_array()) invalid("statistic specs must be a JSON array");
    for (const auto& entry : array) list.push_back(statistic_spec_from_json(entry, query));
  } else {
    list = preset_statistics(query, preset);
  }
  auto measured = collect_statistics(query, database, list);
  Json out = statistics_json(measured, query);
  for (std::size_t i = 0; i < measured.size(); ++i) {
    out[i]["log2_norm"] = finite_or_null(lpbound::measure(query, database, measured[i].spec));
  }
  return out;
}

Json bound(const Query& query, const Json& stats_document, const BoundOptions& options) {
  auto stats = statistics_from_json(stats_document, query);
  if (options.dump_lp) {
    BoundProgram program = bound_program(query.num_variables(), stats, options.cone);
    std::ofstream out(*options.dump_lp);
    if (!out) fail(ErrorKind::kIo, "cannot write " + options.dump_lp->string());
    write_mps(program.lp, out);
  }
  BoundReport report = log_bound(query, stats, options.cone);
  return bound_report_json(report, stats, query, options.shannon);
}

Json compare(const Query& query, const Database& database, std::span<const std::string> presets,
             std::optional<std::uint64_t> true_count) {
  std::uint64_t truth = 0;
  if (true_count) {
    truth = *true_count;
  } else {
    JoinOptions options;
    options.count_only = true;
    truth = generic_join(query, database, options).count;
  }
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["query"] = query.to_string();
  out["true_count"] = truth;
  Json rows = Json::array();
  for (const auto& preset : presets) {
    auto specs = preset_statistics(query, preset);
    auto stats = collect_statistics(query, database, specs);
    BoundReport report = log_bound(query, stats, Cone::kPolymatroid);
    Json row;
    row["preset"] = preset;
    row["status"] = to_string(report.status);
    row["stats_used"] = stats.size();
    if (report.optimal()) {
      const double log_bound = report.log_bound.get_d();
      row["log2_bound"] = log_bound;
      row["bound"] = finite_or_null(report.bound());
      if (truth > 0) {
        const double log_ratio = log_bound - std::log2(static_cast<double>(truth));
        row["log2_ratio"] = log_ratio;
        row["ratio"] = finite_or_null(std::exp2(log_ratio));
      } else {
        row["log2_ratio"] = nullptr;
        row["ratio"] = nullptr;
      }
    } else {
      row["log2_bound"] = nullptr;
      row["bound"] = nullptr;
      row["log2_ratio"] = nullptr;
      row["ratio"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  out["presets"] = std::move(rows);
  return out;
}

std::string compare_table(const Json& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-14s %6s %12s %14s %12s\n", "statistics", "#stats", "log2 bound", "bound",
                "ratio");
  out << "query: " << report.value("query", "") << "\n";
  out << "true output size: " << report.value("true_count", 0ULL) << "\n";
  out << line;
  for (const auto& row : report["presets"]) {
    auto number = [&](const char* key, const char* format) -> std::string {
      if (!row.contains(key) || row[key].is_null()) return "-";
      char buffer[48];
      std::snprintf(buffer, sizeof buffer, format, row[key].get<double>());
      return buffer;
    };
    std::string name = row["preset"].get<std::string>();
    if (name != "agm" && name != "panda") name = "{" + name + "}";
    std::snprintf(line, sizeof line, "%-14s %6zu %12s %14s %12s\n", name.c_str(), row["stats_used"].get<std::size_t>(),
                  number("log2_bound", "%.4f").c_str(), number("bound", "%.4g").c_str(),
                  number("ratio", "%.4g").c_str());
    out << line;
  }
  return out.str();
}

EvaluateOutcome evaluate(const Query& query, const Database& database, const EvaluateOptions& options) {
  EvaluateOutcome outcome;
  Json& report = outcome.report;
  report["schema_version"] = kSchemaVersion;
  report["engine"] = options.engine;
  if (options.engine == "oracle" || options.engine == "generic") {
    JoinOptions join;
    join.count_only = options.count_only;
    JoinResult result = options.engine == "oracle" ? brute_force_join(query, database, join)
                                                   : generic_join(query, database, join);
    report["count"] = result.count;
    report["work"] = result.work;
    outcome.output = std::move(result.output);
    return outcome;
  }
  if (options.engine != "partitioned") invalid("unknown engine '" + options.engine + "'");

  std::vector<ConcreteStatistic> stats;
  if (options.stats) {
    stats = statistics_from_json(*options.stats, query);
  } else {
    auto specs = preset_statistics(query, options.preset);
    stats = collect_statistics(query, database, specs);
  }
  BoundReport bound = log_bound(query, stats, Cone::kPolymatroid);
  if (!bound.optimal()) invalid("the statistics give no finite bound; partitioned evaluation needs one");
  std::vector<ConcreteStatistic> used;
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (sgn(bound.weights[i]) > 0) {
      used.push_back(stats[i]);
      weights.push_back(bound.weights[i]);
    }
  }
  PartitionedOptions partitioned;
  partitioned.count_only = options.count_only;
  partitioned.threads = options.threads;
  PartitionedResult result = partitioned_evaluate(query, database, used, weights, partitioned);
  report["count"] = result.count;
  report["work"] = result.work;
  report["combinations"] = result.combinations;
  report["max_work_ratio"] = result.max_work_ratio;
  report["log2_bound"] = bound.log_bound.get_d();
  Json certificate = statistics_json(used, query);
  for (std::size_t i = 0; i < used.size(); ++i) {
    certificate[i]["weight"] = weights[i].get_d();
    certificate[i]["weight_exact"] = weights[i].get_str();
    certificate[i]["parts"] = result.parts_per_statistic[i];
  }
  report["certificate"] = std::move(certificate);
  outcome.output = std::move(result.output);
  return outcome;
}

Json worstcase(const Query& query, const Json& stats_document, const std::optional<std::filesystem::path>& out_dir) {
  auto stats = statistics_from_json(stats_document, query);
  WorstCase result = worst_case_database(query, stats);
  if (out_dir) export_database(result, *out_dir);
  const WorstCaseReport& r = result.report;
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["bound"] = finite_or_null(r.bound);
  out["log2_bound"] = r.log_bound.get_d();
  out["log2_bound_exact"] = r.log_bound.get_str();
  out["achieved"] = r.achieved;
  out["gap_log2"] = r.gap_log2;
  out["c"] = r.support;
  out["satisfies_statistics"] = r.satisfies_statistics;
  Json factors = Json::array();
  for (const auto& f : result.factors) {
    factors.push_back({{"V", query.names(f.variables)}, {"size", f.size}, {"log2_size_target", f.coefficient.get_d()}});
  }
  out["factors"] = std::move(factors);
  Json relations = Json::object();
  for (const auto& [name, relation] : result.database.relations()) relations[name] = relation.size();
  out["relation_sizes"] = std::move(relations);
  return out;
}

Json convert(const Json& input, std::string_view direction) {
  const Json& list = input.is_object() ? (input.contains("sequence") ? input["sequence"] : input["power_sums"]) : input;
  if (!list.is_array()) invalid("convert expects a JSON array");
  Json out;
  out["schema_version"] = kSchemaVersion;
  if (direction == "sums") {
    std::vector<std::uint64_t> degrees;
    for (const auto& item : list) {
      if (!item.is_number_integer() || item.get<long long>() < 0) invalid("degrees must be nonnegative integers");
      degrees.push_back(item.get<std::uint64_t>());
    }
    Json sums = Json::array();
    for (const auto& p : sequence_to_power_sums(degrees)) sums.push_back(rational_json(p));
    out["power_sums"] = std::move(sums);
    return out;
  }
  if (direction == "sequence") {
    std::vector<Rational> sums;
    for (const auto& item : list) sums.push_back(json_rational(item));
    Json sequence = Json::array();
    for (double v : power_sums_to_sequence(sums)) {
      if (v == std::floor(v) && std::fabs(v) < 9e15) sequence.push_back(static_cast<long long>(v));
      else sequence.push_back(v);
    }
    out["sequence"] = std::move(sequence);
    return out;
  }
  invalid("unknown conversion direction '" + std::string(direction) + "' (expected sums or sequence)");
}

Json check_inequality(const Query& query, const Json& inequality, Cone cone) {
  const Json& terms = inequality.is_object() && inequality.contains("terms") ? inequality["terms"] : inequality;
  if (!terms.is_array()) invalid("inequality must list its terms");
  std::vector<StatisticSpec> specs;
  std::vector<Rational> weights;
  for (const auto& term : terms) {
    if (!term.is_object()) invalid("each inequality term must be an object");
    StatisticSpec spec;
    if (term.contains("atom")) {
      spec = statistic_spec_from_json(term, query);
    } else {
      auto names = [&](const char* field) {
        std::vector<std::string> out;
        if (term.contains(field)) {
          for (const auto& item : term[field]) out.push_back(item.get<std::string>());
        }
        return out;
      };
      spec.given = query.variable_set(names("U"));
      spec.target = query.variable_set(names("V"));
      if (!term.contains("p")) invalid("inequality term needs 'p'");
      spec.p = json_norm(term["p"]);
      if (spec.target.empty()) invalid("inequality term has an empty V");
    }
    if (!term.contains("weight")) invalid("inequality term needs 'weight'");
    specs.push_back(spec);
    weights.push_back(json_rational(term["weight"]));
  }
  ValidityResult result = validity_check(query.num_variables(), specs, weights, cone);
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["cone"] = to_string(cone);
  out["valid"] = result.valid;
  out["minimum"] = result.minimum.get_d();
  out["minimum_exact"] = result.minimum.get_str();
  if (!result.valid) {
    out["counterexample"] = set_function_json(result.counterexample, query.variables());
    out["gap"] = result.gap.get_d();
    out["gap_exact"] = result.gap.get_str();
  }
  return out;
}

}  // namespace lpbound::commands
