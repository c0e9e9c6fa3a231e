#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "../support.hpp"
#include "lpbound/error.hpp"
#include "lpbound/relation.hpp"

using namespace lpbound;
using lpbound::testing::make_relation;

TEST_CASE("relations are sorted sets") {
  Relation r = make_relation("R", 2, {{3, 1}, {1, 2}, {3, 1}, {1, 1}});
  CHECK(r.size() == 3);
  CHECK(r.duplicates_dropped() == 1);
  CHECK(r.row(0)[0] == 1);
  CHECK(r.row(0)[1] == 1);
  CHECK(r.row(2)[0] == 3);
  CHECK_THROWS_AS(make_relation("R", 2, {{1}}), Error);
  CHECK_THROWS_AS(Relation("R", {"a", "a"}), Error);
}

TEST_CASE("nullary relations hold at most the empty tuple") {
  Relation empty("E", {}, {});
  Relation unit("U", {}, {{}, {}});
  CHECK(empty.size() == 0);
  CHECK(unit.size() == 1);
}

TEST_CASE("projection deduplicates") {
  Relation r = make_relation("R", 3, {{1, 2, 3}, {1, 2, 4}, {2, 2, 3}});
  const Columns cols{1, 0};
  Relation p = project(r, cols);
  CHECK(p.size() == 2);
  CHECK(p.arity() == 2);
  CHECK(active_domain(r).size() == 4);
}

TEST_CASE("degree sequences and norms") {
  // X=1 has degree 2, X=2 has degree 2, X=3 has degree 1.
  Relation r = make_relation("R", 2, {{1, 10}, {1, 11}, {2, 10}, {2, 12}, {3, 10}});
  const Columns x{0}, y{1}, none{};
  CHECK(degree_sequence(r, y, x) == DegreeSequence{2, 2, 1});
  CHECK(degree_sequence(r, x, y) == DegreeSequence{3, 1, 1});
  CHECK(degree_sequence(r, y, none) == DegreeSequence{3});
  CHECK(lp_norm(r, y, x, NormIndex(1)) == doctest::Approx(std::log2(5.0)));
  CHECK(lp_norm(r, y, x, NormIndex(2)) == doctest::Approx(std::log2(3.0)));
  CHECK(lp_norm(r, y, x, NormIndex::infinity()) == doctest::Approx(1.0));
  CHECK(lp_norm(r, y, x, NormIndex(3)) == doctest::Approx(std::log2(17.0) / 3.0));
  const DegreeSequence nothing;
  CHECK(std::isinf(lp_norm(nothing, NormIndex(2))));
  // Huge degrees do not overflow.
  const DegreeSequence big{1ULL << 40, 1ULL << 40};
  CHECK(lp_norm(big, NormIndex(30)) == doctest::Approx(40.0 + 1.0 / 30.0));
}

TEST_CASE("norms are monotone non-increasing in p") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Relation r = testing::random_relation(rng, "R", 2, 40, 6);
    const Columns x{0}, y{1};
    double previous = INFINITY;
    for (long p : {1L, 2L, 3L, 5L, 9L}) {
      const double value = lp_norm(r, y, x, NormIndex(p));
      CHECK(value <= previous + 1e-12);
      previous = value;
    }
    CHECK(lp_norm(r, y, x, NormIndex::infinity()) <= previous + 1e-12);
  }
}

TEST_CASE("empirical entropy of the uniform distribution") {
  Relation r = make_relation("R", 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EmpiricalEntropy h = empirical_entropy(r);
  CHECK(h(0) == doctest::Approx(0.0));
  CHECK(h(1) == doctest::Approx(1.0));
  CHECK(h(3) == doctest::Approx(2.0));
  const std::vector<double> weights{1, 1, 1, 5};
  EmpiricalEntropy weighted = empirical_entropy(r, weights);
  CHECK(weighted(3) < 2.0);
  const std::vector<double> wrong{1, 2};
  CHECK_THROWS_AS(empirical_entropy(r, wrong), Error);
}

TEST_CASE("alpha-beta relations have the advertised degree sequence") {
  auto counts = [](const DegreeSequence& d) {
    std::map<std::uint64_t, std::size_t> out;
    for (auto v : d) ++out[v];
    return out;
  };
  const Columns x{0}, y{1};
  AlphaBetaRelation small = generate_alpha_beta(16, 0.25, 0.25);
  CHECK(small.relation.size() == 16);
  CHECK(counts(degree_sequence(small.relation, y, x)) == std::map<std::uint64_t, std::size_t>{{1, 12}, {2, 2}});
  AlphaBetaRelation cube = generate_alpha_beta(81, 0.25, 0.25);
  CHECK(cube.relation.size() == 81);
  CHECK(counts(degree_sequence(cube.relation, y, x)) == std::map<std::uint64_t, std::size_t>{{1, 72}, {3, 3}});
  CHECK_THROWS_AS(generate_alpha_beta(16, 0.75, 0.75), Error);
}

TEST_CASE("delimited parsing follows RFC 4180 quoting") {
  auto rows = parse_delimited("a,\"b,c\",\"d \"\"q\"\"\"\r\n1,2,3\n", ',');
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a", "b,c", "d \"q\""});
  CHECK(rows[1] == std::vector<std::string>{"1", "2", "3"});
  auto multiline = parse_delimited("\"x\ny\",z\n", ',');
  REQUIRE(multiline.size() == 1);
  CHECK(multiline[0][0] == "x\ny");
  CHECK_THROWS_AS(parse_delimited("\"open,1\n", ','), Error);
}

TEST_CASE("CSV round trip through the dictionary") {
  Dictionary dictionary;
  Relation r = parse_relation("from,to\nalice,bob\nbob,\"carol, jr\"\nalice,bob\n", "E", dictionary, ',');
  CHECK(r.size() == 2);
  CHECK(r.duplicates_dropped() == 1);
  CHECK(dictionary.size() == 3);
  const std::string text = format_relation(r, ',');
  Dictionary again;
  Relation back = parse_relation(text, "E", again, ',');
  CHECK(format_relation(back, ',') == text);
  CHECK_THROWS_AS(parse_relation("x,y\na,b\nc\n", "E", dictionary, ','), Error);
}

TEST_CASE("header row names columns") {
  Dictionary dictionary;
  Relation r = parse_relation("X,Y\n1,1\n1,2\n2,1\n1,2", "R", dictionary, ',');
  CHECK(r.size() == 3);
  CHECK(r.columns() == std::vector<std::string>{"X", "Y"});
  CHECK(parse_relation("X,Y\n", "R", dictionary, ',').size() == 0);
  CHECK_THROWS_AS(parse_relation("X,Y\n1,2,3\n", "R", dictionary, ','), Error);
  CHECK_THROWS_AS(parse_relation("", "R", dictionary, ','), Error);
  CHECK_THROWS_AS(parse_relation("X,\n1,2\n", "R", dictionary, ','), Error);
}

TEST_CASE("load_relation infers tab for .tsv") {
  const auto dir = std::filesystem::temp_directory_path() / "lpbound_relation_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "T.tsv") << "X\tY\n1\t2\n3\t4\n";
  }
  Dictionary dictionary;
  Relation t = load_relation(dir / "T.tsv", dictionary);
  CHECK(t.arity() == 2);
  CHECK(t.size() == 2);
  CHECK_THROWS_AS(load_relation(dir / "missing.csv", dictionary), Error);
  std::filesystem::remove_all(dir);
}
