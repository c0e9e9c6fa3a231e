#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "../support.hpp"
#include "lpbound/bounds.hpp"
#include "lpbound/error.hpp"
#include "lpbound/evaluator.hpp"

using namespace lpbound;
using namespace lpbound::testing;

TEST_CASE("triangle on a small graph") {
  const Query q = Query::parse("Q(X,Y,Z) :- R(X,Y), S(Y,Z), T(Z,X).");
  Database db;
  const std::vector<std::vector<Value>> edges = {{0, 1}, {1, 2}, {2, 0}, {1, 0}, {0, 2}};
  for (const char* name : {"R", "S", "T"}) db.add(make_relation(name, 2, edges));
  const JoinResult brute = brute_force_join(q, db);
  const JoinResult generic = generic_join(q, db);
  // The cycle 0->1->2->0 in its three rotations.
  CHECK(brute.count == 3);
  CHECK(generic.output == brute.output);
  CHECK(generic.output.columns() == std::vector<std::string>{"X", "Y", "Z"});
  JoinOptions count_only;
  count_only.count_only = true;
  const JoinResult counted = generic_join(q, db, count_only);
  CHECK(counted.count == 3);
  CHECK(counted.output.empty());
}

TEST_CASE("joins handle self-joins and unary atoms") {
  const Query q = Query::parse("Q(X,Y,Z) :- E(X,Y), E(Y,Z), V(Y).");
  Database db;
  db.add(make_relation("E", 2, {{1, 2}, {2, 3}, {2, 4}, {3, 1}}));
  db.add(make_relation("V", 1, {{2}, {3}}));
  const JoinResult brute = brute_force_join(q, db);
  CHECK(brute.count == 3);  // (1,2,3), (1,2,4), (2,3,1)
  CHECK(generic_join(q, db).output == brute.output);
}

TEST_CASE("generic join agrees with brute force on random instances") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 150; ++trial) {
    const Query q = random_shape(rng, true);
    const Database db = random_database(rng, q, 40, 7);
    CHECK(generic_join(q, db).output == brute_force_join(q, db).output);
  }
}

TEST_CASE("output cap is enforced") {
  const Query q = Query::parse("Q(X,Y) :- R(X), S(Y).");
  Database db;
  std::vector<std::vector<Value>> rows;
  for (Value v = 0; v < 100; ++v) rows.push_back({v});
  db.add(make_relation("R", 1, rows));
  db.add(make_relation("S", 1, rows));
  JoinOptions options;
  options.max_output = 50;
  CHECK_THROWS_AS(generic_join(q, db, options), Error);
}

TEST_CASE("partition_relation keeps groups whole and respects the budget") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const Relation r = random_relation(rng, "R", 2, 80, 1 + trial % 12);
    const Columns given{0}, target{1};
    const NormIndex p(1 + trial % 3);
    const double b = lp_norm(r, target, given, p);
    const auto parts = partition_relation(r, given, target, p, b);
    std::map<Value, std::size_t> owner;
    std::size_t total = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const Relation& part = parts[k].relation;
      total += part.size();
      for (std::size_t i = 0; i < part.size(); ++i) {
        auto [it, inserted] = owner.emplace(part.row(i)[0], k);
        CHECK(it->second == k);
      }
      const double lhs = std::log2(static_cast<double>(parts[k].given_count)) +
                         p.as_double() * std::log2(static_cast<double>(parts[k].max_degree));
      CHECK(lhs <= p.as_double() * b + 1e-9);
    }
    CHECK(total == r.size());
  }
  const Relation r = make_relation("R", 2, {{1, 1}, {1, 2}, {2, 1}});
  const Columns given{0}, target{1};
  CHECK(partition_relation(r, given, target, NormIndex::infinity(), 1).size() == 1);
}

TEST_CASE("partitioned evaluation matches and checks its preconditions") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 60; ++trial) {
    const Query q = random_shape(rng, true);
    const Database db = random_database(rng, q, 50, 10);
    const auto stats = collect_statistics(q, db, preset_statistics(q, "1,2,inf"));
    const auto report = log_bound(q, stats, Cone::kPolymatroid);
    PartitionedOptions options;
    options.threads = 1 + trial % 3;
    const auto result = partitioned_evaluate(q, db, stats, report.weights, options);
    CHECK(result.output == generic_join(q, db).output);
    CHECK(result.count == result.output.size());
  }
  const Query q = Query::parse("Q(X,Y) :- R(X,Y).");
  Database db;
  db.add(make_relation("R", 2, {{1, 1}, {1, 2}, {2, 2}}));
  const std::vector<ConcreteStatistic> too_small = {{spec(q, 0, {}, {"X", "Y"}, NormIndex(1)), 1}};
  const std::vector<Rational> one{1};
  try {
    partitioned_evaluate(q, db, too_small, one);
    FAIL("expected a violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kStatisticsViolated);
  }
  // Weights that do not prove a bound are refused.
  const std::vector<ConcreteStatistic> fine = {{spec(q, 0, {}, {"X", "Y"}, NormIndex(1)), 2}};
  const std::vector<Rational> half{Rational(1, 2)};
  CHECK_THROWS_AS(partitioned_evaluate(q, db, fine, half), Error);
}
