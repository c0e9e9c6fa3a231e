// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <bit>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "lpbound/bounds.hpp"
#include "lpbound/error.hpp"

namespace lpbound {
namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<Value>& key) const noexcept {
    std::size_t seed = key.size();
    for (Value v : key) seed ^= std::hash<Value>{}(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

void check_output_budget(std::uint64_t count, const JoinOptions& options) {
  if (!options.count_only && count > options.max_output) {
    fail(ErrorKind::kResourceLimit, "join output exceeds " + std::to_string(options.max_output) + " tuples");
  }
}

std::vector<const Relation*> relations_by_atom(const Query& query, const Database& database) {
  check_database(query, database);
  std::vector<const Relation*> out;
  for (std::size_t j = 0; j < query.atoms().size(); ++j) out.push_back(&atom_relation(query, database, j));
  return out;
}

class GenericJoin {
 public:
  GenericJoin(const Query& query, std::span<const Relation* const> relations, const JoinOptions& options)
      : n_(query.num_variables()), columns_(query.variables()), options_(options) {
    if (relations.size() != query.atoms().size()) invalid("one relation per atom is required");
    participants_.resize(n_);
    for (std::size_t j = 0; j < relations.size(); ++j) {
      const Atom& atom = query.atoms()[j];
      if (relations[j]->arity() != atom.variables.size()) {
        invalid("relation " + relations[j]->name() + " does not match the arity of atom " + std::to_string(j));
      }
      std::vector<std::size_t> positions(atom.variables.size());
      for (std::size_t c = 0; c < positions.size(); ++c) positions[c] = c;
      std::sort(positions.begin(), positions.end(),
                [&](std::size_t a, std::size_t b) { return atom.variables[a] < atom.variables[b]; });
      sorted_.push_back(project(*relations[j], positions));
      for (std::size_t depth = 0; depth < positions.size(); ++depth) {
        participants_[atom.variables[positions[depth]]].push_back({j, depth});
      }
      ranges_.push_back({0, sorted_.back().size()});
    }
    assignment_.resize(n_);
  }

  JoinResult run() {
    search(0);
    JoinResult result;
    result.count = count_;
    result.work = work_;
    if (options_.count_only) result.output = Relation("Q", columns_);
    else result.output = Relation::from_flat("Q", columns_, std::move(flat_));
    return result;
  }

 private:
  struct Participant {
    std::size_t atom;
    std::size_t column;
  };
  struct Range {
    std::size_t lo;
    std::size_t hi;
  };

  Value value(std::size_t atom, std::size_t row, std::size_t column) const {
    return sorted_[atom].data()[row * sorted_[atom].arity() + column];
  }

  Range equal_range(const Participant& p, Value v) const {
    const Range r = ranges_[p.atom];
    std::size_t lo = r.lo, hi = r.hi;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (value(p.atom, mid, p.column) < v) lo = mid + 1;
      else hi = mid;
    }
    std::size_t first = lo;
    hi = r.hi;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (value(p.atom, mid, p.column) <= v) lo = mid + 1;
      else hi = mid;
    }
    return {first, lo};
  }

  void search(unsigned variable) {
    if (variable == n_) {
      ++count_;
      check_output_budget(count_, options_);
      if (!options_.count_only) flat_.insert(flat_.end(), assignment_.begin(), assignment_.end());
      return;
    }
    const auto& parts = participants_[variable];
    std::size_t lead = 0;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const Range a = ranges_[parts[i].atom], b = ranges_[parts[lead].atom];
      if (a.hi - a.lo < b.hi - b.lo) lead = i;
    }
    const Participant leader = parts[lead];
    const Range lead_range = ranges_[leader.atom];
    std::vector<Range> saved(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) saved[i] = ranges_[parts[i].atom];

    std::size_t row = lead_range.lo;
    while (row < lead_range.hi) {
      const Value v = value(leader.atom, row, leader.column);
      std::size_t end = row;
      while (end < lead_range.hi && value(leader.atom, end, leader.column) == v) ++end;
      bool alive = true;
      std::vector<Range> narrowed(parts.size());
      for (std::size_t i = 0; i < parts.size() && alive; ++i) {
        narrowed[i] = i == lead ? Range{row, end} : equal_range(parts[i], v);
        alive = narrowed[i].lo < narrowed[i].hi;
      }
      if (alive) {
        ++work_;
        for (std::size_t i = 0; i < parts.size(); ++i) ranges_[parts[i].atom] = narrowed[i];
        assignment_[variable] = v;
        search(variable + 1);
        for (std::size_t i = 0; i < parts.size(); ++i) ranges_[parts[i].atom] = saved[i];
      }
      row = end;
    }
  }

  unsigned n_;
  std::vector<std::string> columns_;
  JoinOptions options_;
  std::vector<Relation> sorted_;
  std::vector<std::vector<Participant>> participants_;
  std::vector<Range> ranges_;
  std::vector<Value> assignment_;
  std::vector<Value> flat_;
  std::uint64_t count_ = 0;
  std::uint64_t work_ = 0;
};

std::vector<std::string> query_columns(const Query& query) { return query.variables(); }

}  // namespace

JoinResult brute_force_join(const Query& query, const Database& database, const JoinOptions& options) {
  auto relations = relations_by_atom(query, database);
  const std::size_t atoms = relations.size();
  const unsigned n = query.num_variables();

  // For atom j: columns whose variable is bound by earlier atoms, and the
  // columns it binds.
  std::vector<Columns> key_columns(atoms), new_columns(atoms);
  std::vector<std::unordered_map<std::vector<Value>, std::vector<std::size_t>, KeyHash>> index(atoms);
  VariableSet bound;
  for (std::size_t j = 0; j < atoms; ++j) {
    const Atom& atom = query.atoms()[j];
    for (std::size_t c = 0; c < atom.variables.size(); ++c) {
      (bound.contains(atom.variables[c]) ? key_columns[j] : new_columns[j]).push_back(c);
    }
    std::vector<Value> key;
    for (std::size_t r = 0; r < relations[j]->size(); ++r) {
      auto row = relations[j]->row(r);
      key.clear();
      for (std::size_t c : key_columns[j]) key.push_back(row[c]);
      index[j][key].push_back(r);
    }
    bound = bound | atom.variable_set();
  }

  JoinResult result;
  std::vector<Value> assignment(n), flat;
  auto recurse = [&](auto&& self, std::size_t j) -> void {
    ++result.work;
    if (j == atoms) {
      ++result.count;
      check_output_budget(result.count, options);
      if (!options.count_only) flat.insert(flat.end(), assignment.begin(), assignment.end());
      return;
    }
    const Atom& atom = query.atoms()[j];
    std::vector<Value> key;
    for (std::size_t c : key_columns[j]) key.push_back(assignment[atom.variables[c]]);
    auto it = index[j].find(key);
    if (it == index[j].end()) return;
    for (std::size_t r : it->second) {
      auto row = relations[j]->row(r);
      for (std::size_t c : new_columns[j]) assignment[atom.variables[c]] = row[c];
      self(self, j + 1);
    }
  };
  recurse(recurse, 0);
  if (!options.count_only) result.output = Relation::from_flat("Q", query_columns(query), std::move(flat));
  else result.output = Relation("Q", query_columns(query));
  result.output.set_dictionary(database.dictionary());
  return result;
}

JoinResult generic_join(const Query& query, std::span<const Relation* const> atom_relations,
                        const JoinOptions& options) {
  GenericJoin join(query, atom_relations, options);
  JoinResult result = join.run();
  if (!atom_relations.empty()) result.output.set_dictionary(atom_relations.front()->dictionary());
  return result;
}

JoinResult generic_join(const Query& query, const Database& database, const JoinOptions& options) {
  auto relations = relations_by_atom(query, database);
  JoinResult result = generic_join(query, relations, options);
  result.output.set_dictionary(database.dictionary());
  return result;
}

std::vector<Part> partition_relation(const Relation& relation, std::span<const std::size_t> given_columns,
                                     std::span<const std::size_t> target_columns, const NormIndex& p,
                                     double log_bound) {
  std::vector<Part> parts;
  if (relation.empty()) return parts;

  // Group tuples by their U-value and measure each group's V-degree.
  std::map<std::vector<Value>, std::vector<std::size_t>> groups;
  std::vector<Value> key;
  for (std::size_t r = 0; r < relation.size(); ++r) {
    auto row = relation.row(r);
    key.clear();
    for (std::size_t c : given_columns) key.push_back(row[c]);
    groups[key].push_back(r);
  }
  struct Group {
    std::uint64_t degree;
    const std::vector<std::size_t>* rows;
  };
  std::vector<Group> measured;
  std::vector<std::vector<Value>> targets;
  for (const auto& [_, rows] : groups) {
    targets.clear();
    for (std::size_t r : rows) {
      auto row = relation.row(r);
      std::vector<Value> t;
      for (std::size_t c : target_columns) t.push_back(row[c]);
      targets.push_back(std::move(t));
    }
    std::sort(targets.begin(), targets.end());
    auto distinct = static_cast<std::uint64_t>(std::unique(targets.begin(), targets.end()) - targets.begin());
    measured.push_back({distinct, &rows});
  }

  auto make_part = [&](std::span<const Group> members) {
    std::vector<Value> flat;
    std::uint64_t top = 0;
    for (const auto& g : members) {
      top = std::max(top, g.degree);
      for (std::size_t r : *g.rows) {
        auto row = relation.row(r);
        flat.insert(flat.end(), row.begin(), row.end());
      }
    }
    Part part{Relation::from_flat(relation.name(), relation.columns(), std::move(flat)), top, members.size()};
    part.relation.set_dictionary(relation.dictionary());
    return part;
  };

  if (p.is_infinite() || given_columns.empty()) {
    parts.push_back(make_part(measured));
    return parts;
  }

  // Stable order: band descending, degree descending, then U-value.
  std::stable_sort(measured.begin(), measured.end(),
                   [](const Group& a, const Group& b) { return a.degree > b.degree; });
  const double exponent = p.as_double();
  const double budget = exponent * log_bound;  // log2 of B^p
  auto band = [](std::uint64_t d) { return std::bit_width(d); };  // d in [2^(i-1), 2^i)

  std::size_t start = 0;
  while (start < measured.size()) {
    const std::uint64_t lead = measured[start].degree;
    const double lead_cost = exponent * std::log2(static_cast<double>(lead));
    std::size_t end = start + 1;
    while (end < measured.size() && band(measured[end].degree) == band(lead) &&
           std::log2(static_cast<double>(end - start + 1)) + lead_cost <= budget + 1e-9) {
      ++end;
    }
    parts.push_back(make_part(std::span<const Group>(measured).subspan(start, end - start)));
    start = end;
  }
  return parts;
}

PartitionedResult partitioned_evaluate(const Query& query, const Database& database,
                                       std::span<const ConcreteStatistic> stats, std::span<const Rational> weights,
                                       const PartitionedOptions& options) {
  if (stats.size() != weights.size()) invalid("one weight per statistic is required");
  check_database(query, database);
  Satisfaction satisfaction = satisfies(query, database, stats);
  if (!satisfaction.satisfied) fail(ErrorKind::kStatisticsViolated, "the database violates the statistics");
  std::vector<StatisticSpec> specs;
  for (const auto& s : stats) specs.push_back(s.spec);
  if (!validity_check(query.num_variables(), specs, weights, Cone::kPolymatroid).valid) {
    invalid("the weights do not certify a valid inequality over the polymatroid cone");
  }

  const std::size_t atoms = query.atoms().size();
  PartitionedResult result;

  // Refine each atom's relation by every statistic on it.
  std::vector<std::vector<Relation>> pieces(atoms);
  for (std::size_t j = 0; j < atoms; ++j) pieces[j].push_back(atom_relation(query, database, j));
  for (const auto& stat : stats) {
    const Atom& atom = query.atoms()[stat.spec.atom];
    const Columns given = atom.columns_of(stat.spec.given);
    const Columns target = atom.columns_of(stat.spec.target);
    const double b = stat.log_bound.get_d();
    result.parts_per_statistic.push_back(
        partition_relation(atom_relation(query, database, stat.spec.atom), given, target, stat.spec.p, b).size());
    std::vector<Relation> refined;
    for (const auto& piece : pieces[stat.spec.atom]) {
      for (auto& part : partition_relation(piece, given, target, stat.spec.p, b)) refined.push_back(std::move(part.relation));
    }
    pieces[stat.spec.atom] = std::move(refined);
  }

  // log2 of each piece's envelope factor for each statistic.
  std::vector<std::vector<double>> envelope(atoms);
  for (std::size_t j = 0; j < atoms; ++j) envelope[j].assign(pieces[j].size(), 0.0);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& spec = stats[i].spec;
    const Atom& atom = query.atoms()[spec.atom];
    const Columns given = atom.columns_of(spec.given);
    const Columns target = atom.columns_of(spec.target);
    const double w = weights[i].get_d();
    for (std::size_t k = 0; k < pieces[spec.atom].size(); ++k) {
      DegreeSequence degrees = degree_sequence(pieces[spec.atom][k], target, given);
      if (degrees.empty()) continue;
      const double groups = given.empty() ? 1.0 : static_cast<double>(degrees.size());
      envelope[spec.atom][k] +=
          w * (spec.p.inverse().get_d() * std::log2(groups) + std::log2(static_cast<double>(degrees.front())));
    }
  }

  std::uint64_t combinations = 1;
  for (const auto& list : pieces) {
    if (list.empty()) {
      combinations = 0;
      break;
    }
    combinations *= list.size();
    if (combinations > 100'000'000) fail(ErrorKind::kResourceLimit, "too many part combinations");
  }
  result.combinations = combinations;

  struct Local {
    std::vector<Value> flat;
    std::uint64_t work = 0;
    std::uint64_t count = 0;
    double max_ratio = 0.0;
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(combinations, 1)));
  std::vector<Local> locals(threads);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&](unsigned t) {
    Local& local = locals[t];
    JoinOptions join_options;
    join_options.count_only = options.count_only;
    join_options.max_output = options.max_output;
    std::vector<const Relation*> chosen(atoms);
    try {
      for (std::uint64_t c = next++; c < combinations && !failed; c = next++) {
        std::uint64_t rest = c;
        double envelope_log2 = 0.0;
        for (std::size_t j = atoms; j-- > 0;) {
          const std::size_t k = rest % pieces[j].size();
          rest /= pieces[j].size();
          chosen[j] = &pieces[j][k];
          envelope_log2 += envelope[j][k];
        }
        JoinResult joined = generic_join(query, chosen, join_options);
        local.work += joined.work;
        local.count += joined.count;
        local.max_ratio = std::max(local.max_ratio, static_cast<double>(joined.work) / std::exp2(envelope_log2));
        if (!options.count_only) {
          local.flat.insert(local.flat.end(), joined.output.data().begin(), joined.output.data().end());
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);

  std::vector<Value> flat;
  for (auto& local : locals) {
    result.work += local.work;
    result.count += local.count;
    result.max_work_ratio = std::max(result.max_work_ratio, local.max_ratio);
    flat.insert(flat.end(), local.flat.begin(), local.flat.end());
  }
  if (!options.count_only) {
    result.output = Relation::from_flat("Q", query.variables(), std::move(flat));
    result.count = result.output.size();
  } else {
    result.output = Relation("Q", query.variables());
  }
  result.output.set_dictionary(database.dictionary());
  return result;
}

}  // namespace lpbound
