// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/query.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "lpbound/error.hpp"

namespace lpbound {

VariableSet Atom::variable_set() const {
  VariableSet s;
  for (unsigned v : variables) s = s.with(v);
  return s;
}

Columns Atom::columns_of(VariableSet s) const {
  Columns columns;
  for (unsigned v : s.elements()) {
    auto it = std::find(variables.begin(), variables.end(), v);
    if (it == variables.end()) invalid("atom " + relation + " does not contain variable #" + std::to_string(v));
    columns.push_back(static_cast<std::size_t>(it - variables.begin()));
  }
  return columns;
}

Query::Query(std::string head, std::vector<std::string> variables, std::vector<Atom> atoms,
             const ParseOptions& options)
    : head_(std::move(head)), variables_(std::move(variables)), atoms_(std::move(atoms)) {
  const unsigned cap = std::min(options.max_variables, kMaxVariables);
  if (variables_.empty()) invalid("query has no variables");
  if (variables_.size() > cap) {
    fail(ErrorKind::kResourceLimit, "query has " + std::to_string(variables_.size()) +
                                        " variables; the limit is " + std::to_string(cap));
  }
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (!seen.insert(v).second) invalid("variable " + v + " repeated in the head");
  }
  if (atoms_.empty()) invalid("query has no body atoms");
  VariableSet covered;
  std::map<std::string, std::size_t> arity;
  for (const auto& atom : atoms_) {
    if (atom.variables.empty()) invalid("atom " + atom.relation + " has no variables");
    VariableSet in_atom;
    for (unsigned v : atom.variables) {
      if (v >= variables_.size()) invalid("atom " + atom.relation + " uses an unknown variable");
      if (in_atom.contains(v)) invalid("variable " + variables_[v] + " repeated in atom " + atom.relation);
      in_atom = in_atom.with(v);
    }
    auto [it, inserted] = arity.emplace(atom.relation, atom.variables.size());
    if (!inserted && it->second != atom.variables.size()) {
      invalid("relation " + atom.relation + " used with different arities");
    }
    covered = covered | in_atom;
  }
  if (covered != all_variables()) {
    for (unsigned v = 0; v < variables_.size(); ++v) {
      if (!covered.contains(v)) invalid("head variable " + variables_[v] + " does not occur in the body");
    }
  }
}

namespace {

class QueryLexer {
 public:
  explicit QueryLexer(std::string_view text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) error("expected '" + std::string(token) + "'");
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (start == pos_) error("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void error(const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorKind::kParse, "query " + std::to_string(line) + ":" + std::to_string(column) + ": " + message);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<std::string> argument_list(QueryLexer& lexer) {
  std::vector<std::string> names;
  lexer.expect("(");
  if (lexer.accept(")")) return names;
  do {
    names.push_back(lexer.identifier());
  } while (lexer.accept(","));
  lexer.expect(")");
  return names;
}

}  // namespace

Query Query::parse(std::string_view text, const ParseOptions& options) {
  QueryLexer lexer(text);
  std::string head = lexer.identifier();
  std::vector<std::string> variables = argument_list(lexer);
  lexer.expect(":-");
  std::vector<std::pair<std::string, std::vector<std::string>>> body;
  do {
    std::string relation = lexer.identifier();
    body.emplace_back(std::move(relation), argument_list(lexer));
  } while (lexer.accept(","));
  lexer.accept(".");
  if (!lexer.at_end()) lexer.error("unexpected text after the query");

  std::vector<Atom> atoms;
  for (auto& [relation, args] : body) {
    Atom atom{relation, {}};
    for (const auto& name : args) {
      auto it = std::find(variables.begin(), variables.end(), name);
      if (it == variables.end()) invalid("body variable " + name + " is missing from the head");
      atom.variables.push_back(static_cast<unsigned>(it - variables.begin()));
    }
    atoms.push_back(std::move(atom));
  }
  return Query(std::move(head), std::move(variables), std::move(atoms), options);
}

Query Query::load(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), options);
}

std::optional<unsigned> Query::find_variable(std::string_view name) const {
  for (unsigned v = 0; v < variables_.size(); ++v) {
    if (variables_[v] == name) return v;
  }
  return std::nullopt;
}

unsigned Query::variable(std::string_view name) const {
  auto v = find_variable(name);
  if (!v) invalid("unknown variable " + std::string(name));
  return *v;
}

VariableSet Query::variable_set(std::span<const std::string> names) const {
  VariableSet s;
  for (const auto& name : names) s = s.with(variable(name));
  return s;
}

std::vector<std::string> Query::names(VariableSet s) const {
  std::vector<std::string> out;
  for (unsigned v : s.elements()) out.push_back(variables_.at(v));
  return out;
}

std::string Query::to_string() const {
  auto join = [&](const std::vector<unsigned>& vars) {
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) out += ",";
      out += variables_[vars[i]];
    }
    return out;
  };
  std::vector<unsigned> head_vars(variables_.size());
  for (unsigned v = 0; v < head_vars.size(); ++v) head_vars[v] = v;
  std::string out = head_ + "(" + join(head_vars) + ") :- ";
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    if (j) out += ", ";
    out += atoms_[j].relation + "(" + join(atoms_[j].variables) + ")";
  }
  return out + ".";
}

void validate_statistic(const Query& query, const StatisticSpec& stat) {
  if (stat.atom >= query.atoms().size()) {
    invalid("statistic refers to atom " + std::to_string(stat.atom) + " but the query has " +
            std::to_string(query.atoms().size()));
  }
  if (stat.target.empty()) invalid("statistic has an empty target set");
  const Atom& atom = query.atoms()[stat.atom];
  if (!stat.variables().is_subset_of(atom.variable_set())) {
    invalid("statistic variables are not all in atom " + std::to_string(stat.atom) + " (" + atom.relation + ")");
  }
}

Girth girth(const Query& query) {
  const unsigned n = query.num_variables();
  std::vector<std::pair<unsigned, unsigned>> edges;
  for (const auto& atom : query.atoms()) {
    if (atom.variables.size() > 2) {
      return {std::nullopt, "atom " + atom.relation + " has arity " + std::to_string(atom.variables.size()) +
                                "; girth is defined for binary atoms only"};
    }
    if (atom.variables.size() == 2) edges.emplace_back(atom.variables[0], atom.variables[1]);
  }
  std::map<std::pair<unsigned, unsigned>, unsigned> multiplicity;
  for (auto [a, b] : edges) {
    if (++multiplicity[{std::min(a, b), std::max(a, b)}] >= 2) return {2u, ""};
  }
  std::vector<std::vector<unsigned>> adjacency(n);
  for (auto [a, b] : edges) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  // Shortest cycle through each root via BFS; cross edges close cycles.
  std::optional<unsigned> best;
  for (unsigned root = 0; root < n; ++root) {
    std::vector<int> depth(n, -1), parent(n, -1);
    std::queue<unsigned> frontier;
    depth[root] = 0;
    frontier.push(root);
    while (!frontier.empty()) {
      unsigned u = frontier.front();
      frontier.pop();
      for (unsigned w : adjacency[u]) {
        if (depth[w] < 0) {
          depth[w] = depth[u] + 1;
          parent[w] = static_cast<int>(u);
          frontier.push(w);
        } else if (parent[u] != static_cast<int>(w)) {
          unsigned cycle = static_cast<unsigned>(depth[u] + depth[w] + 1);
          if (!best || cycle < *best) best = cycle;
        }
      }
    }
  }
  if (!best) return {std::nullopt, "the atom graph is acyclic"};
  return {best, ""};
}

Database load_database(const Query& query, const std::filesystem::path& directory, const CsvOptions& options) {
  Database database;
  std::set<std::string> names;
  for (const auto& atom : query.atoms()) names.insert(atom.relation);
  for (const auto& name : names) {
    std::filesystem::path path = directory / (name + ".csv");
    if (!std::filesystem::exists(path)) path = directory / (name + ".tsv");
    if (!std::filesystem::exists(path)) {
      fail(ErrorKind::kIo, "no file for relation " + name + " in " + directory.string());
    }
    Relation relation = load_relation(path, *database.dictionary(), options);
    relation.rename(name);
    relation.set_dictionary(database.dictionary());
    database.add(std::move(relation));
  }
  check_database(query, database);
  return database;
}

void check_database(const Query& query, const Database& database) {
  for (const auto& atom : query.atoms()) {
    const Relation& relation = database.at(atom.relation);
    if (relation.arity() != atom.variables.size()) {
      invalid("relation " + atom.relation + " has " + std::to_string(relation.arity()) +
              " columns but the query uses it with " + std::to_string(atom.variables.size()));
    }
  }
}

const Relation& atom_relation(const Query& query, const Database& database, std::size_t atom) {
  const Relation& relation = database.at(query.atoms().at(atom).relation);
  if (relation.arity() != query.atoms()[atom].variables.size()) {
    invalid("relation " + relation.name() + " does not match the arity of atom " + std::to_string(atom));
  }
  return relation;
}

double measure(const Query& query, const Database& database, const StatisticSpec& stat) {
  validate_statistic(query, stat);
  const Atom& atom = query.atoms()[stat.atom];
  const Relation& relation = atom_relation(query, database, stat.atom);
  return lp_norm(relation, atom.columns_of(stat.target), atom.columns_of(stat.given), stat.p);
}

Satisfaction satisfies(const Query& query, const Database& database, std::span<const ConcreteStatistic> stats) {
  Satisfaction result;
  for (const auto& stat : stats) {
    const double measured = measure(query, database, stat.spec);
    const double slack = stat.log_bound.get_d() - measured;
    result.measured.push_back(measured);
    result.slack.push_back(slack);
    if (slack < -kSatisfactionTolerance) result.satisfied = false;
  }
  return result;
}

}  // namespace lpbound
