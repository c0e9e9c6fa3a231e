// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lpbound/norm.hpp"

namespace lpbound {

using Value = std::int64_t;

// Interns text tokens as dense integer ids. Shared by every relation loaded
// into the same database so equal strings compare equal across files.
class Dictionary {
 public:
  Value intern(std::string_view token);
  std::optional<Value> find(std::string_view token) const;
  const std::string& token(Value id) const;
  std::size_t size() const noexcept { return tokens_.size(); }

 private:
  std::unordered_map<std::string, Value> ids_;
  std::vector<std::string> tokens_;
};

// Column positions inside a relation.
using Columns = std::vector<std::size_t>;

// A finite set of tuples over named columns. Tuples are kept sorted and
// distinct; construction drops duplicates and records how many were dropped.
class Relation {
 public:
  Relation() = default;
  Relation(std::string name, std::vector<std::string> columns);
  Relation(std::string name, std::vector<std::string> columns,
           std::vector<std::vector<Value>> rows);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t arity() const noexcept { return columns_.size(); }
  std::size_t size() const noexcept { return arity() == 0 ? nullary_rows_ : data_.size() / arity(); }
  bool empty() const noexcept { return size() == 0; }
  std::size_t duplicates_dropped() const noexcept { return duplicates_dropped_; }

  std::span<const Value> row(std::size_t i) const {
    return {data_.data() + i * arity(), arity()};
  }
  const std::vector<Value>& data() const noexcept { return data_; }

  std::size_t column_index(std::string_view column) const;
  Columns column_indices(std::span<const std::string> names) const;

  // Tokens for rendering values; null when values are plain integers.
  const std::shared_ptr<const Dictionary>& dictionary() const noexcept { return dictionary_; }
  void set_dictionary(std::shared_ptr<const Dictionary> dictionary) { dictionary_ = std::move(dictionary); }
  std::string render(Value value) const;

  void rename(std::string name) { name_ = std::move(name); }

  // Flat row-major tuples; sorted and deduplicated here.
  static Relation from_flat(std::string name, std::vector<std::string> columns,
                            std::vector<Value> flat);

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.columns_ == b.columns_ && a.data_ == b.data_ && a.nullary_rows_ == b.nullary_rows_;
  }

 private:
  void canonicalize();

  std::string name_;
  std::vector<std::string> columns_;
  std::vector<Value> data_;
  std::size_t nullary_rows_ = 0;
  std::size_t duplicates_dropped_ = 0;
  std::shared_ptr<const Dictionary> dictionary_;
};

// Projection onto the given columns, in that order, deduplicated.
Relation project(const Relation& relation, std::span<const std::size_t> columns);

// Active domain: distinct values over all columns.
std::vector<Value> active_domain(const Relation& relation);

// Degree sequence of V given U, sorted non-increasing. deg(v|u) counts the
// distinct V-values co-occurring with u in the projection onto U and V.
using DegreeSequence = std::vector<std::uint64_t>;
DegreeSequence degree_sequence(const Relation& relation, std::span<const std::size_t> v_columns,
                               std::span<const std::size_t> u_columns);
DegreeSequence degree_sequence(const Relation& relation, std::span<const std::string> v_columns,
                               std::span<const std::string> u_columns);

// log2 of the l_p norm; -infinity for an empty sequence.
double lp_norm(std::span<const std::uint64_t> degrees, const NormIndex& p);
double lp_norm(const Relation& relation, std::span<const std::size_t> v_columns,
               std::span<const std::size_t> u_columns, const NormIndex& p);

// Entropy of the distribution on the tuples of a relation, for every subset of
// its columns. Bit i of the subset mask refers to column i.
struct EmpiricalEntropy {
  std::vector<std::string> columns;
  std::vector<double> values;  // indexed by subset mask, base 2
  double operator()(std::uint32_t mask) const { return values.at(mask); }
};
// Uniform when weights is empty; otherwise one positive weight per tuple.
EmpiricalEntropy empirical_entropy(const Relation& relation, std::span<const double> weights = {});

// Binary relation over (X, Y) of size exactly M: round(M^alpha) values of X
// with degree round(M^beta), every other X-value of degree 1.
struct AlphaBetaRelation {
  Relation relation;
  std::uint64_t heavy_count = 0;
  std::uint64_t heavy_degree = 0;
  std::uint64_t light_count = 0;
};
AlphaBetaRelation generate_alpha_beta(std::uint64_t size, double alpha, double beta);

// Named relations sharing one dictionary.
class Database {
 public:
  Database() : dictionary_(std::make_shared<Dictionary>()) {}

  void add(Relation relation);
  bool contains(std::string_view name) const;
  const Relation& at(std::string_view name) const;
  const std::map<std::string, Relation, std::less<>>& relations() const noexcept { return relations_; }
  const std::shared_ptr<Dictionary>& dictionary() const noexcept { return dictionary_; }

 private:
  std::map<std::string, Relation, std::less<>> relations_;
  std::shared_ptr<Dictionary> dictionary_;
};

struct CsvOptions {
  // 0 infers from the extension: tab for .tsv, comma otherwise.
  char delimiter = 0;
};

// Reads a delimited file with a mandatory header row. Fields are interned in
// the dictionary.
Relation load_relation(const std::filesystem::path& path, Dictionary& dictionary,
                       const CsvOptions& options = {});
Relation parse_relation(std::string_view text, std::string name, Dictionary& dictionary,
                        char delimiter);

void write_relation(const Relation& relation, const std::filesystem::path& path,
                    const CsvOptions& options = {});
std::string format_relation(const Relation& relation, char delimiter);

// Splits text into records of fields, honoring RFC 4180 double quotes.
std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter);

}  // namespace lpbound
