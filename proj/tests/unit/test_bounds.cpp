#include <doctest.h>

#include <cmath>
#include <random>

#include "../support.hpp"
#include "lpbound/bounds.hpp"
#include "lpbound/evaluator.hpp"

using namespace lpbound;
using namespace lpbound::testing;

TEST_CASE("triangle AGM bound and its certificate") {
  const Query q = Query::parse("Q(X,Y,Z) :- R(X,Y), S(Y,Z), T(Z,X).");
  std::vector<ConcreteStatistic> stats;
  for (std::size_t i = 0; i < 3; ++i) stats.push_back({{i, {}, q.atoms()[i].variable_set(), NormIndex(1)}, 10});
  const BoundReport r = log_bound(q, stats, Cone::kPolymatroid);
  REQUIRE(r.optimal());
  CHECK(r.log_bound == 15);
  CHECK(r.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  CHECK(is_polymatroid(r.optimum));
  CHECK(r.optimum[q.all_variables()] == 15);
  // Shannon multipliers reproduce the dual: sum_i w_i term_i - h(all) equals
  // a nonnegative combination of Shannon rows.
  const auto rows = shannon_constraints(3);
  REQUIRE(r.shannon_weights.size() == rows.size());
  LinearTerm lhs;
  for (std::size_t i = 0; i < 3; ++i) lhs.add(stat_term_coefficients(stats[i].spec), r.weights[i]);
  lhs.add(q.all_variables().bits(), -1);
  LinearTerm rhs;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(sgn(r.shannon_weights[k]) >= 0);
    rhs.add(rows[k].terms, r.shannon_weights[k]);
  }
  lhs.add(rhs, -1);
  lhs.add(0, -lhs.coefficient(0));  // h(empty) is pinned to 0
  CHECK(lhs.empty());
}

TEST_CASE("uncovered variables make the bound unbounded") {
  const Query q = Query::parse("Q(X,Y) :- R(X,Y).");
  const std::vector<ConcreteStatistic> stats = {{spec(q, 0, {"X"}, {"Y"}, NormIndex::infinity()), 2}};
  const BoundReport r = log_bound(q, stats, Cone::kPolymatroid);
  CHECK(r.status == LpStatus::kUnbounded);
  CHECK(std::isinf(r.bound()));
}

TEST_CASE("negative log bounds are infeasible") {
  const Query q = Query::parse("Q(X,Y) :- R(X,Y).");
  const std::vector<ConcreteStatistic> stats = {{spec(q, 0, {}, {"X", "Y"}, NormIndex(1)), -1}};
  CHECK(log_bound(q, stats, Cone::kPolymatroid).status == LpStatus::kInfeasible);
}

TEST_CASE("cones are nested: modular <= normal <= polymatroid") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const Query q = random_shape(rng, true);
    const Database db = random_database(rng, q, 30, 8);
    const auto stats = collect_statistics(q, db, preset_statistics(q, "1,2,inf"));
    const auto gamma = log_bound(q, stats, Cone::kPolymatroid);
    const auto normal = log_bound(q, stats, Cone::kNormal);
    const auto modular = log_bound(q, stats, Cone::kModular);
    REQUIRE(gamma.optimal());
    CHECK(normal.log_bound <= gamma.log_bound);
    CHECK(modular.log_bound <= normal.log_bound);
    CHECK(is_normal(normal.optimum));
    CHECK(is_modular(modular.optimum));
  }
}

TEST_CASE("modular cone warns when girth is small") {
  const Query q = Query::parse("Q(U,V) :- R(U,V), S(V,U).");
  const std::vector<ConcreteStatistic> stats = {{spec(q, 0, {"U"}, {"V"}, NormIndex(2)), 1},
                                                {spec(q, 1, {"V"}, {"U"}, NormIndex(2)), 1},
                                                {spec(q, 0, {}, {"U", "V"}, NormIndex(1)), 3}};
  CHECK_FALSE(log_bound(q, stats, Cone::kModular).warnings.empty());
  CHECK(log_bound(q, stats, Cone::kPolymatroid).warnings.empty());
}

TEST_CASE("validity check over the two-cycle") {
  const Query q = Query::parse("Q(U,V) :- R(U,V), S(V,U).");
  const std::vector<StatisticSpec> specs = {spec(q, 0, {"U"}, {"V"}, NormIndex(2)),
                                            spec(q, 1, {"V"}, {"U"}, NormIndex(2))};
  const std::vector<Rational> weights = {Rational(2, 3), Rational(2, 3)};
  const ValidityResult gamma = validity_check(2, specs, weights, Cone::kPolymatroid);
  CHECK_FALSE(gamma.valid);
  CHECK(gamma.minimum == Rational(-1, 9));
  CHECK(gamma.gap == Rational(-1, 3));
  CHECK(is_polymatroid(gamma.counterexample));
  CHECK(validity_check(2, specs, weights, Cone::kModular).valid);
  // Weight 1 on each makes it valid over every cone.
  const std::vector<Rational> ones = {1, 1};
  CHECK(validity_check(2, specs, ones, Cone::kPolymatroid).valid);
}

TEST_CASE("preset statistic families") {
  const Query q = Query::parse("Q(X,Y,Z) :- R(X,Y), S(Y,Z), T(Z,X).");
  CHECK(preset_statistics(q, "agm").size() == 3);
  CHECK(preset_statistics(q, "1,2,inf").size() == 21);
  CHECK(preset_statistics(q, "1").size() == 9);
  // Binary atoms: l1 on X, Y, XY plus l_inf on (Y|X), (X|Y).
  CHECK(preset_statistics(q, "panda").size() == 15);
  CHECK_THROWS_AS(preset_statistics(q, "bogus"), Error);
}

TEST_CASE("collected statistics round up and bound the true output") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const Query q = random_shape(rng, true);
    const Database db = random_database(rng, q, 40, 10);
    const auto specs = preset_statistics(q, "1,2,3,inf");
    const auto stats = collect_statistics(q, db, specs);
    for (const auto& s : stats) CHECK(s.log_bound.get_d() >= measure(q, db, s.spec));
    CHECK(satisfies(q, db, stats).satisfied);
    const auto report = log_bound(q, stats, Cone::kPolymatroid);
    const auto count = generic_join(q, db).count;
    if (count > 0) CHECK(std::log2(static_cast<double>(count)) <= report.log_bound.get_d() + 1e-9);
  }
}

TEST_CASE("empty relations contribute zero bits") {
  const Query q = Query::parse("Q(X,Y) :- R(X,Y).");
  Database db;
  db.add(make_relation("R", 2, {}));
  const auto stats = collect_statistics(q, db, agm_statistics(q));
  CHECK(stats[0].log_bound == 0);
}
