// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "lpbound/commands.hpp"
#include "lpbound/error.hpp"

struct lpb_query {
  lpbound::Query query;
};

struct lpb_database {
  lpbound::Database database;
};

namespace {

thread_local std::string last_error;

lpb_status status_of(lpbound::ErrorKind kind) {
  using lpbound::ErrorKind;
  switch (kind) {
    case ErrorKind::kParse: return LPB_ERR_PARSE;
    case ErrorKind::kInvalidArgument: return LPB_ERR_INVALID;
    case ErrorKind::kIo: return LPB_ERR_IO;
    case ErrorKind::kResourceLimit: return LPB_ERR_RESOURCE;
    case ErrorKind::kNotFound: return LPB_ERR_NOT_FOUND;
    case ErrorKind::kStatisticsViolated: return LPB_ERR_VIOLATED;
    case ErrorKind::kInternal: return LPB_ERR_INTERNAL;
  }
  return LPB_ERR_INTERNAL;
}

template <typename Body>
lpb_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return LPB_OK;
  } catch (const lpbound::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return LPB_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LPB_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LPB_ERR_INTERNAL;
  }
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void require(const void* pointer, const char* what) {
  if (!pointer) lpbound::invalid(std::string(what) + " must not be NULL");
}

lpbound::ParseOptions parse_options(unsigned max_variables) {
  lpbound::ParseOptions options;
  if (max_variables != 0) options.max_variables = max_variables;
  return options;
}

lpbound::Json parse_json(const char* text, const char* what) {
  require(text, what);
  return lpbound::Json::parse(text);
}

}  // namespace

extern "C" {

const char* lpb_version(void) { return "1.0.0"; }

const char* lpb_last_error(void) { return last_error.c_str(); }

void lpb_string_free(char* text) { std::free(text); }

lpb_status lpb_query_parse(const char* text, unsigned max_variables, lpb_query** out) {
  return guarded([&] {
    require(text, "query text");
    require(out, "output handle");
    *out = new lpb_query{lpbound::Query::parse(text, parse_options(max_variables))};
  });
}

lpb_status lpb_query_load(const char* path, unsigned max_variables, lpb_query** out) {
  return guarded([&] {
    require(path, "query path");
    require(out, "output handle");
    *out = new lpb_query{lpbound::Query::load(path, parse_options(max_variables))};
  });
}

void lpb_query_free(lpb_query* query) { delete query; }

lpb_status lpb_query_to_string(const lpb_query* query, char** out) {
  return guarded([&] {
    require(query, "query");
    require(out, "output string");
    *out = duplicate(query->query.to_string());
  });
}

lpb_status lpb_database_load(const lpb_query* query, const char* directory, char delimiter, lpb_database** out) {
  return guarded([&] {
    require(query, "query");
    require(directory, "directory");
    require(out, "output handle");
    lpbound::CsvOptions options;
    options.delimiter = delimiter;
    *out = new lpb_database{lpbound::load_database(query->query, directory, options)};
  });
}

void lpb_database_free(lpb_database* database) { delete database; }

lpb_status lpb_database_size(const lpb_database* database, const char* relation, uint64_t* out) {
  return guarded([&] {
    require(database, "database");
    require(relation, "relation name");
    require(out, "output");
    *out = database->database.at(relation).size();
  });
}

lpb_status lpb_stats(const lpb_query* query, const lpb_database* database, const char* specs_json,
                     const char* preset, char** out_json) {
  return guarded([&] {
    require(query, "query");
    require(database, "database");
    require(out_json, "output string");
    lpbound::Json specs;
    if (specs_json) specs = lpbound::Json::parse(specs_json);
    auto result = lpbound::commands::stats(query->query, database->database, specs_json ? &specs : nullptr,
                                           preset ? preset : "1,2,inf");
    *out_json = duplicate(result.dump());
  });
}

lpb_status lpb_bound(const lpb_query* query, const char* stats_json, const char* cone, int with_shannon,
                     const char* dump_path, char** out_json) {
  return guarded([&] {
    require(query, "query");
    require(out_json, "output string");
    lpbound::commands::BoundOptions options;
    options.cone = lpbound::parse_cone(cone ? cone : "polymatroid");
    options.shannon = with_shannon != 0;
    if (dump_path) options.dump_lp = dump_path;
    auto result = lpbound::commands::bound(query->query, parse_json(stats_json, "statistics"), options);
    *out_json = duplicate(result.dump());
  });
}

lpb_status lpb_compare(const lpb_query* query, const lpb_database* database, const char* presets,
                       int64_t true_count, char** out_json, char** out_table) {
  return guarded([&] {
    require(query, "query");
    require(database, "database");
    require(out_json, "output string");
    std::vector<std::string> list;
    std::string text = presets ? presets : "agm;panda;1;1,inf;2;1,2,3,inf";
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t semicolon = text.find(';', start);
      if (semicolon == std::string::npos) semicolon = text.size();
      std::string item = text.substr(start, semicolon - start);
      if (!item.empty()) list.push_back(item);
      start = semicolon + 1;
    }
    if (list.empty()) lpbound::invalid("no presets given");
    std::optional<std::uint64_t> truth;
    if (true_count >= 0) truth = static_cast<std::uint64_t>(true_count);
    auto result = lpbound::commands::compare(query->query, database->database, list, truth);
    *out_json = duplicate(result.dump());
    if (out_table) *out_table = duplicate(lpbound::commands::compare_table(result));
  });
}

lpb_status lpb_evaluate(const lpb_query* query, const lpb_database* database, const char* engine,
                        const char* stats_json, const char* preset, int count_only, unsigned threads,
                        char** out_json, char** out_csv) {
  return guarded([&] {
    require(query, "query");
    require(database, "database");
    require(out_json, "output string");
    lpbound::commands::EvaluateOptions options;
    if (engine) options.engine = engine;
    options.count_only = count_only != 0;
    options.threads = threads;
    if (preset) options.preset = preset;
    lpbound::Json stats;
    if (stats_json) {
      stats = lpbound::Json::parse(stats_json);
      options.stats = &stats;
    }
    auto outcome = lpbound::commands::evaluate(query->query, database->database, options);
    *out_json = duplicate(outcome.report.dump());
    if (out_csv) *out_csv = options.count_only ? nullptr : duplicate(lpbound::format_relation(outcome.output, ','));
  });
}

lpb_status lpb_worstcase(const lpb_query* query, const char* stats_json, const char* out_dir, char** out_json) {
  return guarded([&] {
    require(query, "query");
    require(out_json, "output string");
    std::optional<std::filesystem::path> directory;
    if (out_dir) directory = out_dir;
    auto result = lpbound::commands::worstcase(query->query, parse_json(stats_json, "statistics"), directory);
    *out_json = duplicate(result.dump());
  });
}

lpb_status lpb_convert(const char* input_json, const char* direction, char** out_json) {
  return guarded([&] {
    require(direction, "direction");
    require(out_json, "output string");
    auto result = lpbound::commands::convert(parse_json(input_json, "input"), direction);
    *out_json = duplicate(result.dump());
  });
}

lpb_status lpb_check_inequality(const lpb_query* query, const char* inequality_json, const char* cone,
                                char** out_json) {
  return guarded([&] {
    require(query, "query");
    require(out_json, "output string");
    auto result = lpbound::commands::check_inequality(query->query, parse_json(inequality_json, "inequality"),
                                                      lpbound::parse_cone(cone ? cone : "polymatroid"));
    *out_json = duplicate(result.dump());
  });
}

}  // extern "C"
