// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

// Command-line front end. Talks to the library only through lpbound.h.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 unbounded, 3 infeasible or
// violated statistics.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lpbound.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnbounded = 2;
constexpr int kExitInfeasible = 3;

struct CliFailure {
  int code;
  std::string message;
};

using QueryHandle = std::unique_ptr<lpb_query, decltype(&lpb_query_free)>;
using DatabaseHandle = std::unique_ptr<lpb_database, decltype(&lpb_database_free)>;

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { lpb_string_free(text_); }
  char** out() { return &text_; }
  std::string str() const { return text_ ? text_ : ""; }
  bool null() const { return text_ == nullptr; }

 private:
  char* text_ = nullptr;
};

void check(lpb_status status) {
  if (status == LPB_OK) return;
  const int code = status == LPB_ERR_VIOLATED ? kExitInfeasible : kExitError;
  throw CliFailure{code, lpb_last_error()};
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw CliFailure{kExitError, "cannot open " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw CliFailure{kExitError, "cannot write " + path};
  out << text;
}

struct Common {
  std::string query_path;
  std::string data_dir;
  std::string delimiter;
  unsigned max_vars = 0;
  std::string format = "json";
  std::string output;
};

QueryHandle load_query(const Common& common) {
  lpb_query* raw = nullptr;
  check(lpb_query_load(common.query_path.c_str(), common.max_vars, &raw));
  return QueryHandle(raw, lpb_query_free);
}

DatabaseHandle load_database(const Common& common, const lpb_query* query) {
  char delimiter = 0;
  if (common.delimiter == "tab" || common.delimiter == "\\t") delimiter = '\t';
  else if (common.delimiter.size() == 1) delimiter = common.delimiter[0];
  else if (!common.delimiter.empty()) throw CliFailure{kExitError, "delimiter must be one character or 'tab'"};
  lpb_database* raw = nullptr;
  check(lpb_database_load(query, common.data_dir.c_str(), delimiter, &raw));
  return DatabaseHandle(raw, lpb_database_free);
}

// Either one pretty JSON document or, for arrays, one compact line per item.
std::string render(const nlohmann::json& document, const std::string& format) {
  if (format == "jsonl") {
    std::string out;
    const nlohmann::json* items = &document;
    if (document.is_object() && document.contains("presets")) items = &document["presets"];
    if (items->is_array()) {
      for (const auto& item : *items) out += item.dump() + "\n";
      return out;
    }
    return document.dump() + "\n";
  }
  return document.dump(2) + "\n";
}

int status_exit_code(const nlohmann::json& report) {
  const std::string status = report.value("status", "optimal");
  if (status == "unbounded") return kExitUnbounded;
  if (status == "infeasible") return kExitInfeasible;
  return kExitOk;
}

void add_common(CLI::App* command, Common& common, bool needs_data) {
  command->add_option("-q,--query", common.query_path, "Query file")->required()->check(CLI::ExistingFile);
  if (needs_data) {
    command->add_option("-d,--data", common.data_dir, "Directory holding <relation>.csv or .tsv")
        ->required()
        ->check(CLI::ExistingDirectory);
    command->add_option("--delimiter", common.delimiter, "Field delimiter; inferred from the extension by default");
  }
  command->add_option("--max-vars", common.max_vars, "Variable limit (default 14, at most 20)");
  command->add_option("-o,--output", common.output, "Write the result here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpbound: output-size bounds for conjunctive queries from l_p-norm statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lpb_version()));

  Common common;

  auto* stats_cmd = app.add_subcommand("stats", "Measure degree-sequence norms on a database");
  add_common(stats_cmd, common, true);
  std::string specs_path;
  std::string stats_preset = "1,2,inf";
  stats_cmd->add_option("--specs", specs_path, "JSON array of statistic specs to measure");
  stats_cmd->add_option("--preset", stats_preset, "agm, panda, or a norm list such as 1,2,inf");
  stats_cmd->add_option("--format", common.format, "json or jsonl")->check(CLI::IsMember({"json", "jsonl"}));

  auto* bound_cmd = app.add_subcommand("bound", "Compute the output-size bound for given statistics");
  add_common(bound_cmd, common, false);
  std::string stats_path;
  std::string cone = "polymatroid";
  bool certificate = false;
  std::string dump_lp;
  bound_cmd->add_option("-s,--stats", stats_path, "Statistics JSON file")->required();
  bound_cmd->add_option("--cone", cone, "polymatroid, normal or modular")
      ->check(CLI::IsMember({"polymatroid", "gamma", "normal", "modular"}));
  bound_cmd->add_flag("--certificate", certificate, "Include the Shannon inequalities used by the proof");
  bound_cmd->add_option("--dump-lp", dump_lp, "Write the linear program in fixed MPS format");

  auto* compare_cmd = app.add_subcommand("compare", "Compare bounds from several statistic families");
  add_common(compare_cmd, common, true);
  std::vector<std::string> presets;
  long long true_count = -1;
  compare_cmd->add_option("-p,--preset", presets, "agm, panda or a norm list such as 1,inf (repeatable)");
  compare_cmd->add_option("--true-count", true_count, "Known output size; computed when omitted");
  compare_cmd->add_option("--format", common.format, "table, json or jsonl")
      ->check(CLI::IsMember({"table", "json", "jsonl"}));

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate the query");
  add_common(evaluate_cmd, common, true);
  std::string engine = "generic";
  bool count_only = false;
  unsigned threads = 0;
  std::string evaluate_stats;
  std::string evaluate_preset = "1,2,inf";
  std::string report_path;
  evaluate_cmd->add_option("--engine", engine, "oracle, generic or partitioned")
      ->check(CLI::IsMember({"oracle", "generic", "partitioned"}));
  evaluate_cmd->add_flag("--emit-count-only", count_only, "Print only the output size");
  evaluate_cmd->add_option("--stats", evaluate_stats, "Statistics for the partitioned engine");
  evaluate_cmd->add_option("--preset", evaluate_preset, "Statistics measured for the partitioned engine");
  evaluate_cmd->add_option("--threads", threads, "Worker threads for the partitioned engine");
  evaluate_cmd->add_option("--report", report_path, "Write the JSON run report here (stderr by default)");

  auto* worst_cmd = app.add_subcommand("worstcase", "Build a database whose output nearly meets the bound");
  add_common(worst_cmd, common, false);
  std::string worst_stats;
  std::string out_dir;
  worst_cmd->add_option("-s,--stats", worst_stats, "Statistics JSON file (simple statistics)")->required();
  worst_cmd->add_option("--out", out_dir, "Directory for the generated CSV files");

  auto* convert_cmd = app.add_subcommand("convert", "Convert between degree sequences and power sums");
  std::string direction;
  std::string input_path = "-";
  std::string convert_output;
  convert_cmd->add_option("--to", direction, "sums or sequence")->required()->check(CLI::IsMember({"sums", "sequence"}));
  convert_cmd->add_option("-i,--input", input_path, "JSON array; stdin when omitted");
  convert_cmd->add_option("-o,--output", convert_output, "Write the result here instead of stdout");

  auto* ineq_cmd = app.add_subcommand("check-ineq", "Decide whether a weighted statistic inequality is valid");
  add_common(ineq_cmd, common, false);
  std::string ineq_path;
  std::string ineq_cone = "polymatroid";
  ineq_cmd->add_option("-i,--inequality", ineq_path, "Inequality JSON file")->required();
  ineq_cmd->add_option("--cone", ineq_cone, "polymatroid, normal or modular")
      ->check(CLI::IsMember({"polymatroid", "gamma", "normal", "modular"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (stats_cmd->parsed()) {
      QueryHandle query = load_query(common);
      DatabaseHandle database = load_database(common, query.get());
      std::string specs_text;
      if (!specs_path.empty()) specs_text = read_text(specs_path);
      LibString out;
      check(lpb_stats(query.get(), database.get(), specs_path.empty() ? nullptr : specs_text.c_str(),
                      stats_preset.c_str(), out.out()));
      write_text(common.output, render(nlohmann::json::parse(out.str()), common.format));
      return kExitOk;
    }
    if (bound_cmd->parsed()) {
      QueryHandle query = load_query(common);
      const std::string stats_text = read_text(stats_path);
      LibString out;
      check(lpb_bound(query.get(), stats_text.c_str(), cone.c_str(), certificate ? 1 : 0,
                      dump_lp.empty() ? nullptr : dump_lp.c_str(), out.out()));
      auto report = nlohmann::json::parse(out.str());
      write_text(common.output, render(report, "json"));
      return status_exit_code(report);
    }
    if (compare_cmd->parsed()) {
      QueryHandle query = load_query(common);
      DatabaseHandle database = load_database(common, query.get());
      if (presets.empty()) presets = {"agm", "panda", "1", "1,inf", "2", "1,2,3,inf"};
      std::string joined;
      for (const auto& p : presets) joined += (joined.empty() ? "" : ";") + p;
      LibString out, table;
      if (common.format == "json" && compare_cmd->get_option("--format")->count() == 0) common.format = "table";
      check(lpb_compare(query.get(), database.get(), joined.c_str(), true_count, out.out(), table.out()));
      if (common.format == "table") write_text(common.output, table.str());
      else write_text(common.output, render(nlohmann::json::parse(out.str()), common.format));
      return kExitOk;
    }
    if (evaluate_cmd->parsed()) {
      QueryHandle query = load_query(common);
      DatabaseHandle database = load_database(common, query.get());
      std::string stats_text;
      if (!evaluate_stats.empty()) stats_text = read_text(evaluate_stats);
      LibString out, csv;
      check(lpb_evaluate(query.get(), database.get(), engine.c_str(),
                         evaluate_stats.empty() ? nullptr : stats_text.c_str(), evaluate_preset.c_str(),
                         count_only ? 1 : 0, threads, out.out(), csv.out()));
      auto report = nlohmann::json::parse(out.str());
      if (count_only) {
        write_text(common.output, std::to_string(report["count"].get<unsigned long long>()) + "\n");
      } else {
        write_text(common.output, csv.str());
      }
      if (!report_path.empty()) write_text(report_path, report.dump(2) + "\n");
      else if (!count_only) std::cerr << report.dump() << "\n";
      return kExitOk;
    }
    if (worst_cmd->parsed()) {
      QueryHandle query = load_query(common);
      const std::string stats_text = read_text(worst_stats);
      LibString out;
      check(lpb_worstcase(query.get(), stats_text.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), out.out()));
      auto report = nlohmann::json::parse(out.str());
      write_text(common.output, render(report, "json"));
      return report.value("satisfies_statistics", true) ? kExitOk : kExitInfeasible;
    }
    if (convert_cmd->parsed()) {
      const std::string input = read_text(input_path);
      LibString out;
      check(lpb_convert(input.c_str(), direction.c_str(), out.out()));
      write_text(convert_output, render(nlohmann::json::parse(out.str()), "json"));
      return kExitOk;
    }
    if (ineq_cmd->parsed()) {
      QueryHandle query = load_query(common);
      const std::string text = read_text(ineq_path);
      LibString out;
      check(lpb_check_inequality(query.get(), text.c_str(), ineq_cone.c_str(), out.out()));
      write_text(common.output, render(nlohmann::json::parse(out.str()), "json"));
      return kExitOk;
    }
  } catch (const CliFailure& failure) {
    std::cerr << "lpbound: " << failure.message << "\n";
    return failure.code;
  } catch (const std::exception& e) {
    std::cerr << "lpbound: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
