#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "../support.hpp"
#include "lpbound/error.hpp"
#include "lpbound/evaluator.hpp"
#include "lpbound/worstcase.hpp"

using namespace lpbound;
using namespace lpbound::testing;

TEST_CASE("basic normal relations and domain products") {
  const std::vector<std::string> names{"X", "Y", "Z"};
  const Relation t = basic_normal_relation(names, VariableSet(0b011), 4);
  CHECK(t.size() == 4);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(t.row(i)[0] == t.row(i)[1]);
    CHECK(t.row(i)[2] == 0);
  }
  const Relation u = basic_normal_relation(names, VariableSet(0b100), 3);
  const Relation product = domain_product(t, u);
  CHECK(product.size() == 12);
  // Projections multiply: |Pi_XY| = 4, |Pi_Z| = 3.
  const Columns xy{0, 1}, z{2};
  CHECK(project(product, xy).size() == 4);
  CHECK(project(product, z).size() == 3);
  const Relation narrow = basic_normal_relation(std::vector<std::string>{"X"}, VariableSet(1), 2);
  CHECK_THROWS_AS(domain_product(t, narrow), Error);
}

TEST_CASE("decode_value renders mixed-radix digits") {
  const std::vector<std::string> names{"X", "Y"};
  std::vector<ProductFactor> factors = {{VariableSet(0b01), 3, Rational(0)}, {VariableSet(0b11), 4, Rational(0)}};
  Relation t = basic_normal_relation(names, factors[0].variables, factors[0].size);
  t = domain_product(t, basic_normal_relation(names, factors[1].variables, factors[1].size));
  std::set<std::string> rendered;
  for (std::size_t i = 0; i < t.size(); ++i) rendered.insert(decode_value(t.row(i)[0], factors));
  CHECK(rendered.size() == 12);
  CHECK(rendered.count("(2,3)") == 1);
}

TEST_CASE("triangle with unary guards attains floor(2^b)") {
  const Query q = Query::parse("Q(X,Y,Z) :- R1(X,Y), R2(Y,Z), R3(Z,X), S1(X), S2(Y), S3(Z).");
  const Rational b(7);
  const std::vector<ConcreteStatistic> stats = {
      {spec(q, 0, {"X"}, {"Y"}, NormIndex(4)), b / 4}, {spec(q, 1, {"Y"}, {"Z"}, NormIndex(4)), b / 4},
      {spec(q, 2, {"Z"}, {"X"}, NormIndex(4)), b / 4}, {spec(q, 3, {}, {"X"}, NormIndex(1)), b},
      {spec(q, 4, {}, {"Y"}, NormIndex(1)), b},        {spec(q, 5, {}, {"Z"}, NormIndex(1)), b}};
  const WorstCase wc = worst_case_database(q, stats);
  CHECK(wc.report.log_bound == b);
  CHECK(wc.report.achieved == 128);
  CHECK(wc.report.support == 1);
  CHECK(wc.report.satisfies_statistics);
  CHECK(wc.witness.size() == 128);
  CHECK(generic_join(q, wc.database).count == 128);
}

TEST_CASE("worst-case databases for random simple statistics") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const Query q = random_shape(rng, true);
    std::vector<ConcreteStatistic> stats;
    std::uniform_int_distribution<int> eighths(8, 64);
    for (std::size_t a = 0; a < q.atoms().size(); ++a) {
      const VariableSet vars = q.atoms()[a].variable_set();
      stats.push_back({{a, {}, vars, NormIndex(1)}, Rational(eighths(rng), 8)});
      const unsigned x = vars.elements()[trial % 2];
      const Rational b(eighths(rng), 16);
      stats.push_back({{a, VariableSet::singleton(x), vars.without(x), NormIndex(2 + trial % 2)}, b});
    }
    for (auto& s : stats) s.log_bound.canonicalize();
    const WorstCase wc = worst_case_database(q, stats);
    CHECK(wc.report.satisfies_statistics);
    CHECK(wc.report.achieved == generic_join(q, wc.database).count);
    CHECK(std::log2(static_cast<double>(wc.report.achieved)) >=
          wc.report.log_bound.get_d() - wc.report.support - 1e-9);
  }
}

TEST_CASE("non-simple statistics and self-joins are refused") {
  const Query q = Query::parse("Q(X,Y,Z) :- R(X,Y,Z).");
  const std::vector<ConcreteStatistic> wide = {{spec(q, 0, {"X", "Y"}, {"Z"}, NormIndex(2)), 1},
                                               {spec(q, 0, {}, {"X", "Y", "Z"}, NormIndex(1)), 3}};
  CHECK_THROWS_AS(worst_case_database(q, wide), Error);
  const Query self = Query::parse("Q(X,Y,Z) :- E(X,Y), E(Y,Z).");
  const std::vector<ConcreteStatistic> stats = {{spec(self, 0, {}, {"X", "Y"}, NormIndex(1)), 2},
                                                {spec(self, 1, {}, {"Y", "Z"}, NormIndex(1)), 3}};
  CHECK_THROWS_AS(worst_case_database(self, stats), Error);
}

TEST_CASE("export writes decoded CSV files") {
  const Query q = Query::parse("Q(X,Y) :- R(X,Y).");
  const std::vector<ConcreteStatistic> stats = {{spec(q, 0, {}, {"X", "Y"}, NormIndex(1)), 2}};
  const WorstCase wc = worst_case_database(q, stats);
  const auto dir = std::filesystem::temp_directory_path() / "lpbound_worstcase_test";
  std::filesystem::remove_all(dir);
  export_database(wc, dir);
  CHECK(std::filesystem::exists(dir / "R.csv"));
  Dictionary dictionary;
  CHECK(load_relation(dir / "R.csv", dictionary).size() == 4);
  std::filesystem::remove_all(dir);
}
