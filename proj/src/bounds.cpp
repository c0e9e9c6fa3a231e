// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "lpbound/bounds.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "lpbound/error.hpp"

namespace lpbound {
namespace {

std::string describe(const StatisticSpec& stat) {
  std::ostringstream out;
  out << "atom" << stat.atom << ":l" << stat.p.to_string() << "(" << stat.target.bits() << "|" << stat.given.bits()
      << ")";
  return out.str();
}

// stat_term of one generator's step function.
Rational generator_term(VariableSet generator, const StatisticSpec& stat) {
  Rational value = 0;
  const bool meets_given = generator.intersects(stat.given);
  if (meets_given) value += stat.p.inverse() - 1;
  if (generator.intersects(stat.given | stat.target)) value += 1;
  return value;
}

void check_statistics(unsigned n, std::span<const ConcreteStatistic> stats) {
  const VariableSet all = VariableSet::full(n);
  for (const auto& stat : stats) {
    if (!stat.spec.variables().is_subset_of(all)) invalid("statistic uses variables outside the query");
    if (stat.spec.target.empty()) invalid("statistic has an empty target set");
  }
}

SetFunction<Rational> integer_scaled(const SetFunction<Rational>& h) {
  mpz_class denominator_lcm = 1;
  mpz_class numerator_gcd = 0;
  for (const auto& v : h.values()) {
    mpz_lcm(denominator_lcm.get_mpz_t(), denominator_lcm.get_mpz_t(), v.get_den_mpz_t());
    mpz_gcd(numerator_gcd.get_mpz_t(), numerator_gcd.get_mpz_t(), v.get_num_mpz_t());
  }
  if (numerator_gcd == 0) return h;
  Rational scale(denominator_lcm, numerator_gcd);
  scale.canonicalize();
  SetFunction<Rational> out = h;
  for (auto& v : out.values()) {
    v *= scale;
    v.canonicalize();
  }
  return out;
}

}  // namespace

double BoundReport::bound() const {
  if (status == LpStatus::kUnbounded) return std::numeric_limits<double>::infinity();
  if (status == LpStatus::kInfeasible) return 0.0;
  return std::exp2(log_bound.get_d());
}

BoundProgram bound_program(unsigned n, std::span<const ConcreteStatistic> stats, Cone cone) {
  check_statistics(n, stats);
  BoundProgram program;
  LinearProgram& lp = program.lp;
  lp.sense = Objective::kMaximize;
  const VariableSet all = VariableSet::full(n);

  if (cone == Cone::kPolymatroid) {
    lp.num_variables = std::size_t{1} << n;
    for (std::uint32_t w = 0; w < lp.num_variables; ++w) lp.variable_names.push_back("h" + std::to_string(w));
    lp.objective.add(all.bits(), Rational(1));
    LinearTerm empty;
    empty.add(0, Rational(1));
    lp.add_constraint(empty, RowSense::kEqual, Rational(0), "empty");
    for (const auto& row : shannon_constraints(n)) {
      program.shannon_rows.push_back(lp.add_constraint(row.terms, RowSense::kGreaterEqual, Rational(0), "shannon"));
    }
    for (const auto& stat : stats) {
      program.statistic_rows.push_back(
          lp.add_constraint(stat_term_coefficients(stat.spec), RowSense::kLessEqual, stat.log_bound, describe(stat.spec)));
    }
    return program;
  }

  program.generators = cone_generators(n, cone);
  lp.num_variables = program.generators.size();
  for (std::size_t g = 0; g < program.generators.size(); ++g) {
    lp.variable_names.push_back("a" + std::to_string(program.generators[g].bits()));
    lp.objective.add(static_cast<std::uint32_t>(g), Rational(1));
  }
  for (const auto& stat : stats) {
    LinearTerm row;
    for (std::size_t g = 0; g < program.generators.size(); ++g) {
      row.add(static_cast<std::uint32_t>(g), generator_term(program.generators[g], stat.spec));
    }
    program.statistic_rows.push_back(lp.add_constraint(row, RowSense::kLessEqual, stat.log_bound, describe(stat.spec)));
  }
  return program;
}

BoundReport log_bound(unsigned n, std::span<const ConcreteStatistic> input, Cone cone) {
  std::vector<ConcreteStatistic> stats(input.begin(), input.end());
  for (auto& stat : stats) stat.log_bound.canonicalize();
  BoundProgram program = bound_program(n, stats, cone);
  LpSolution solution = solve(program.lp);

  BoundReport report;
  report.status = solution.status;
  report.cone = cone;
  report.num_variables = n;
  report.pivots = solution.pivots;
  report.generators = program.generators;
  if (solution.status == LpStatus::kUnbounded) {
    report.warnings.push_back("the statistics do not constrain every variable; the bound is infinite");
    return report;
  }
  if (solution.status == LpStatus::kInfeasible) {
    report.warnings.push_back("no set function in the cone meets the statistics (negative log bounds?)");
    return report;
  }
  report.log_bound = solution.objective;
  for (std::size_t row : program.statistic_rows) report.weights.push_back(solution.dual[row]);
  for (std::size_t row : program.shannon_rows) report.shannon_weights.push_back(-solution.dual[row]);
  if (cone == Cone::kPolymatroid) {
    report.optimum = SetFunction<Rational>(n);
    for (std::uint32_t w = 0; w < report.optimum.size(); ++w) report.optimum[VariableSet(w)] = solution.primal[w];
  } else {
    report.generator_coefficients = solution.primal;
    report.optimum = combine_generators(n, report.generators, report.generator_coefficients);
  }

  Rational check = 0;
  for (std::size_t i = 0; i < stats.size(); ++i) check += report.weights[i] * stats[i].log_bound;
  if (check != report.log_bound) fail(ErrorKind::kInternal, "certificate does not reproduce the bound");
  return report;
}

BoundReport log_bound(const Query& query, std::span<const ConcreteStatistic> stats, Cone cone) {
  NormIndex largest_finite = NormIndex::infinity();
  bool any_finite = false;
  for (const auto& stat : stats) {
    validate_statistic(query, stat.spec);
    if (!stat.spec.p.is_infinite() && (!any_finite || largest_finite < stat.spec.p)) {
      largest_finite = stat.spec.p;
      any_finite = true;
    }
  }
  BoundReport report = log_bound(query.num_variables(), stats, cone);
  if (cone == Cone::kModular && any_finite) {
    Girth g = girth(query);
    if (g.length && Rational(*g.length) <= largest_finite.value()) {
      report.warnings.push_back("modular bound is not an output-size bound: query girth " +
                                std::to_string(*g.length) + " <= largest finite p " +
                                largest_finite.to_string());
    }
  }
  return report;
}

ValidityResult validity_check(unsigned n, std::span<const StatisticSpec> stats, std::span<const Rational> input_weights,
                              Cone cone) {
  if (stats.size() != input_weights.size()) invalid("one weight per statistic is required");
  std::vector<Rational> weights(input_weights.begin(), input_weights.end());
  for (auto& w : weights) w.canonicalize();
  for (const auto& w : weights) {
    if (sgn(w) < 0) invalid("inequality weights must be nonnegative");
  }
  const VariableSet all = VariableSet::full(n);
  for (const auto& stat : stats) {
    if (!stat.variables().is_subset_of(all)) invalid("statistic uses variables outside the query");
  }

  LinearProgram lp;
  lp.sense = Objective::kMinimize;
  std::vector<VariableSet> generators;
  if (cone == Cone::kPolymatroid) {
    lp.num_variables = std::size_t{1} << n;
    for (std::size_t i = 0; i < stats.size(); ++i) lp.objective.add(stat_term_coefficients(stats[i]), weights[i]);
    lp.objective.add(all.bits(), Rational(-1));
    LinearTerm empty;
    empty.add(0, Rational(1));
    lp.add_constraint(empty, RowSense::kEqual, Rational(0), "empty");
    for (const auto& row : shannon_constraints(n)) lp.add_constraint(row.terms, RowSense::kGreaterEqual, Rational(0));
    LinearTerm total;
    for (std::uint32_t w = 0; w < lp.num_variables; ++w) total.add(w, Rational(1));
    lp.add_constraint(total, RowSense::kLessEqual, Rational(1), "slice");
  } else {
    generators = cone_generators(n, cone);
    lp.num_variables = generators.size();
    LinearTerm total;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      Rational coefficient = -1;
      for (std::size_t i = 0; i < stats.size(); ++i) coefficient += weights[i] * generator_term(generators[g], stats[i]);
      lp.objective.add(static_cast<std::uint32_t>(g), coefficient);
      // Number of masks meeting the generator.
      mpz_class meets = (mpz_class(1) << n) - (mpz_class(1) << (n - generators[g].size()));
      total.add(static_cast<std::uint32_t>(g), Rational(meets));
    }
    lp.add_constraint(total, RowSense::kLessEqual, Rational(1), "slice");
  }

  LpSolution solution = solve(lp);
  if (solution.status != LpStatus::kOptimal) fail(ErrorKind::kInternal, "validity program is not bounded");

  ValidityResult result;
  result.minimum = solution.objective;
  result.valid = sgn(solution.objective) >= 0;
  if (!result.valid) {
    SetFunction<Rational> h(n);
    if (cone == Cone::kPolymatroid) {
      for (std::uint32_t w = 0; w < h.size(); ++w) h[VariableSet(w)] = solution.primal[w];
    } else {
      h = combine_generators(n, generators, solution.primal);
    }
    result.counterexample = integer_scaled(h);
    Rational gap = -result.counterexample[all];
    for (std::size_t i = 0; i < stats.size(); ++i) gap += weights[i] * stat_term(result.counterexample, stats[i]);
    result.gap = gap;
  }
  return result;
}

std::vector<StatisticSpec> agm_statistics(const Query& query) {
  std::vector<StatisticSpec> specs;
  for (std::size_t j = 0; j < query.atoms().size(); ++j) {
    specs.push_back({j, VariableSet(), query.atoms()[j].variable_set(), NormIndex(1)});
  }
  return specs;
}

std::vector<StatisticSpec> panda_statistics(const Query& query, unsigned max_given) {
  std::vector<StatisticSpec> specs;
  for (std::size_t j = 0; j < query.atoms().size(); ++j) {
    const VariableSet vars = query.atoms()[j].variable_set();
    for (std::uint32_t v = vars.bits(); v; v = (v - 1) & vars.bits()) {
      specs.push_back({j, VariableSet(), VariableSet(v), NormIndex(1)});
    }
    for (std::uint32_t u = vars.bits(); u; u = (u - 1) & vars.bits()) {
      const VariableSet given(u);
      if (given.size() > max_given) continue;
      const VariableSet rest = vars - given;
      for (std::uint32_t v = rest.bits(); v; v = (v - 1) & rest.bits()) {
        specs.push_back({j, given, VariableSet(v), NormIndex::infinity()});
      }
    }
  }
  return specs;
}

std::vector<StatisticSpec> lp_norm_statistics(const Query& query, std::span<const NormIndex> norms) {
  std::vector<StatisticSpec> specs;
  for (std::size_t j = 0; j < query.atoms().size(); ++j) {
    const Atom& atom = query.atoms()[j];
    const VariableSet vars = atom.variable_set();
    specs.push_back({j, VariableSet(), vars, NormIndex(1)});
    if (vars.size() < 2) continue;
    for (const auto& p : norms) {
      for (unsigned x : atom.variables) {
        specs.push_back({j, VariableSet::singleton(x), vars.without(x), p});
      }
    }
  }
  return specs;
}

std::vector<StatisticSpec> preset_statistics(const Query& query, std::string_view preset) {
  if (preset == "agm" || preset == "AGM") return agm_statistics(query);
  if (preset == "panda" || preset == "PANDA") return panda_statistics(query);
  std::vector<NormIndex> norms;
  std::set<std::string> seen;
  std::size_t start = 0;
  while (start <= preset.size()) {
    std::size_t comma = preset.find(',', start);
    if (comma == std::string_view::npos) comma = preset.size();
    std::string_view token = preset.substr(start, comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty()) invalid("empty norm in preset '" + std::string(preset) + "'");
    NormIndex p = NormIndex::parse(token);
    if (seen.insert(p.to_string()).second) norms.push_back(p);
    start = comma + 1;
  }
  return lp_norm_statistics(query, norms);
}

std::vector<ConcreteStatistic> collect_statistics(const Query& query, const Database& database,
                                                  std::span<const StatisticSpec> specs) {
  check_database(query, database);
  std::vector<ConcreteStatistic> stats;
  stats.reserve(specs.size());
  for (const auto& spec : specs) {
    const double measured = measure(query, database, spec);
    Rational bits(0);
    if (std::isfinite(measured)) {
      // Round up so the recorded bound never undercuts the data.
      bits = dyadic(measured);
      if (cmp(bits, measured) < 0) bits += Rational(mpz_class(1), mpz_class(1) << kDyadicBits);
      bits.canonicalize();
    }
    stats.push_back({spec, bits});
  }
  return stats;
}

BoundReport preset_bound(const Query& query, const Database& database, std::string_view preset, Cone cone) {
  auto specs = preset_statistics(query, preset);
  auto stats = collect_statistics(query, database, specs);
  return log_bound(query, stats, cone);
}

}  // namespace lpbound
