// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "lpbound/json_io.hpp"
#include "lpbound/query.hpp"
#include "lpbound/relation.hpp"

// JSON-level implementations of the command-line operations. The C API and
// the CLI are thin wrappers over these.
namespace lpbound::commands {

// Measures the given specs (a JSON array without values) or a preset.
Json stats(const Query& query, const Database& database, const Json* specs, std::string_view preset);

struct BoundOptions {
  Cone cone = Cone::kPolymatroid;
  bool shannon = false;
  std::optional<std::filesystem::path> dump_lp;
};
Json bound(const Query& query, const Json& stats, const BoundOptions& options);

// One row per preset with the bound, the true output size and their ratio.
Json compare(const Query& query, const Database& database, std::span<const std::string> presets,
             std::optional<std::uint64_t> true_count);
std::string compare_table(const Json& report);

struct EvaluateOptions {
  std::string engine = "generic";  // oracle, generic, partitioned
  bool count_only = false;
  const Json* stats = nullptr;     // partitioned engine; measured from preset when null
  std::string preset = "1,2,inf";
  unsigned threads = 0;
};
struct EvaluateOutcome {
  Json report;
  Relation output;
};
EvaluateOutcome evaluate(const Query& query, const Database& database, const EvaluateOptions& options);

Json worstcase(const Query& query, const Json& stats, const std::optional<std::filesystem::path>& out_dir);

// direction "sums": sequence -> power sums; "sequence": power sums -> sequence.
Json convert(const Json& input, std::string_view direction);

// {"terms":[{"U":[...], "V":[...], "p":2, "weight":"2/3"}]}
Json check_inequality(const Query& query, const Json& inequality, Cone cone);

}  // namespace lpbound::commands
