// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <fstream>
#include <sstream>

#include "lpbound/error.hpp"
#include "lpbound/relation.hpp"

namespace lpbound {
namespace {

char infer_delimiter(const std::filesystem::path& path, const CsvOptions& options) {
  if (options.delimiter != 0) return options.delimiter;
  return path.extension() == ".tsv" ? '\t' : ',';
}

bool needs_quotes(const std::string& field, char delimiter) {
  return field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string::npos;
}

}  // namespace

std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A blank line yields one empty field; skip it.
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (field_started) fail(ErrorKind::kParse, "stray quote on line " + std::to_string(line));
      quoted = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      end_record();
      ++line;
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) fail(ErrorKind::kParse, "unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

Relation parse_relation(std::string_view text, std::string name, Dictionary& dictionary, char delimiter) {
  auto records = parse_delimited(text, delimiter);
  if (records.empty()) fail(ErrorKind::kParse, "relation " + name + " has no header row");
  std::vector<std::string> header = std::move(records.front());
  for (const auto& column : header) {
    if (column.empty()) fail(ErrorKind::kParse, "empty column name in header of " + name);
  }
  const std::size_t width = header.size();
  std::vector<Value> flat;
  flat.reserve((records.size() - 1) * width);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      fail(ErrorKind::kParse, "record " + std::to_string(r + 1) + " of " + name + " has " +
                                  std::to_string(records[r].size()) + " fields, expected " +
                                  std::to_string(width));
    }
    for (const auto& field : records[r]) flat.push_back(dictionary.intern(field));
  }
  return Relation::from_flat(std::move(name), std::move(header), std::move(flat));
}

Relation load_relation(const std::filesystem::path& path, Dictionary& dictionary, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_relation(buffer.str(), path.stem().string(), dictionary, infer_delimiter(path, options));
}

std::string format_relation(const Relation& relation, char delimiter) {
  std::string out;
  auto append = [&](const std::string& field) {
    if (!needs_quotes(field, delimiter)) {
      out += field;
      return;
    }
    out.push_back('"');
    for (char c : field) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out.push_back('"');
  };
  for (std::size_t c = 0; c < relation.arity(); ++c) {
    if (c) out.push_back(delimiter);
    append(relation.columns()[c]);
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < relation.size(); ++i) {
    auto row = relation.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(delimiter);
      append(relation.render(row[c]));
    }
    out.push_back('\n');
  }
  return out;
}

void write_relation(const Relation& relation, const std::filesystem::path& path, const CsvOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out << format_relation(relation, infer_delimiter(path, options));
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace lpbound
