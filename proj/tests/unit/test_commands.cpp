#include <doctest.h>

#include "../support.hpp"
#include "lpbound/commands.hpp"
#include "lpbound/json_io.hpp"

using namespace lpbound;
using namespace lpbound::testing;

namespace {

const Query& triangle() {
  static const Query q = Query::parse("Q(X,Y,Z) :- R(X,Y), S(Y,Z), T(Z,X).");
  return q;
}

Database triangle_database() {
  Database db;
  const std::vector<std::vector<Value>> edges = {{0, 1}, {1, 2}, {2, 0}, {1, 0}, {0, 2}, {2, 3}};
  for (const char* name : {"R", "S", "T"}) db.add(make_relation(name, 2, edges));
  return db;
}

}  // namespace

TEST_CASE("JSON numbers are exact decimals") {
  CHECK(json_rational(Json::parse("0.8")) == Rational(4, 5));
  CHECK(json_rational(Json::parse("\"4/5\"")) == Rational(4, 5));
  CHECK(json_rational(Json::parse("3")) == 3);
  CHECK(json_rational(Json::parse("1e2")) == 100);
  CHECK_THROWS(json_rational(Json::parse("[1]")));
  CHECK(json_norm(Json::parse("\"inf\"")).is_infinite());
  CHECK(json_norm(Json::parse("2")) == NormIndex(2));
  CHECK(rational_json(Rational(7)) == Json(7));
  CHECK(rational_json(Rational(1, 3)) == Json("1/3"));
}

TEST_CASE("statistics JSON: b_exact over b over B") {
  const Query& q = triangle();
  const auto stats = statistics_from_json(Json::parse(R"([
    {"atom": 0, "U": ["X"], "V": ["Y"], "p": 2, "b": 0.8},
    {"atom": 1, "U": [], "V": ["Y", "Z"], "p": 1, "B": 1024},
    {"atom": 2, "U": [], "V": ["Z", "X"], "p": "inf", "b": 9, "b_exact": "17/2"},
    {"relation": "T", "U": [], "V": ["X"], "p": 1, "b": 1}
  ])"),
                                          q);
  REQUIRE(stats.size() == 4);
  CHECK(stats[0].log_bound == Rational(4, 5));
  CHECK(stats[0].spec.p == NormIndex(2));
  CHECK(stats[1].log_bound == 10);
  CHECK(stats[2].log_bound == Rational(17, 2));
  CHECK(stats[3].spec.atom == 2);
  // Round trip through the writer.
  const auto again = statistics_from_json(statistics_json(stats, q), q);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    CHECK(again[i].spec == stats[i].spec);
    CHECK(again[i].log_bound == stats[i].log_bound);
  }
  CHECK_THROWS(statistics_from_json(Json::parse(R"([{"atom": 0, "V": ["Z"], "p": 1, "b": 1}])"), q));
  CHECK_THROWS(statistics_from_json(Json::parse(R"([{"atom": 0, "V": ["X"], "p": 1}])"), q));
}

TEST_CASE("set functions round trip through JSON") {
  const std::vector<std::string> names{"A", "B"};
  SetFunction<Rational> h(2);
  h[VariableSet(1)] = Rational(1, 2);
  h[VariableSet(2)] = 1;
  h[VariableSet(3)] = Rational(3, 2);
  CHECK(set_function_from_json(set_function_json(h, names), names) == h);
}

TEST_CASE("bound command report") {
  const Query& q = triangle();
  const Json stats = Json::parse(R"([
    {"atom": 0, "U": [], "V": ["X", "Y"], "p": 1, "b": 10},
    {"atom": 1, "U": [], "V": ["Y", "Z"], "p": 1, "b": 10},
    {"atom": 2, "U": [], "V": ["Z", "X"], "p": 1, "b": 10}
  ])");
  commands::BoundOptions options;
  options.shannon = true;
  const Json report = commands::bound(q, stats, options);
  CHECK(report["status"] == "optimal");
  CHECK(report["log2_bound_exact"] == "15");
  CHECK(report["log2_bound"].get<double>() == doctest::Approx(15.0));
  CHECK(report["certificate"].size() == 3);
  CHECK(report["certificate"][0]["weight_exact"] == "1/2");
  CHECK(report.contains("shannon"));
  CHECK(report["schema_version"] == kSchemaVersion);
}

TEST_CASE("stats, compare and evaluate commands") {
  const Query& q = triangle();
  const Database db = triangle_database();
  const Json measured = commands::stats(q, db, nullptr, "agm");
  REQUIRE(measured.size() == 3);
  CHECK(measured[0]["log2_norm"].get<double>() == doctest::Approx(std::log2(6.0)));

  const std::vector<std::string> presets{"agm", "1,inf"};
  const Json compared = commands::compare(q, db, presets, std::nullopt);
  CHECK(compared["true_count"] == 3);
  CHECK(compared["presets"].size() == 2);
  CHECK(compared["presets"][1]["log2_bound"].get<double>() <= compared["presets"][0]["log2_bound"].get<double>());
  const std::string table = commands::compare_table(compared);
  CHECK(table.find("{1,inf}") != std::string::npos);

  commands::EvaluateOptions options;
  for (const char* engine : {"oracle", "generic", "partitioned"}) {
    options.engine = engine;
    const auto outcome = commands::evaluate(q, db, options);
    CHECK(outcome.report["count"] == 3);
    CHECK(outcome.output.size() == 3);
  }
  options.engine = "magic";
  CHECK_THROWS(commands::evaluate(q, db, options));
}

TEST_CASE("convert and check-inequality commands") {
  CHECK(commands::convert(Json::parse("[2,2,1]"), "sums")["power_sums"] == Json::parse("[5,9,17]"));
  CHECK(commands::convert(Json::parse("[5,9,17]"), "sequence")["sequence"] == Json::parse("[2,2,1]"));
  CHECK(commands::convert(Json::parse(R"({"power_sums": ["5", 9, 17]})"), "sequence")["sequence"] ==
        Json::parse("[2,2,1]"));
  CHECK_THROWS(commands::convert(Json::parse("[1,5]"), "sequence"));
  CHECK_THROWS(commands::convert(Json::parse("[1]"), "sideways"));

  const Query q = Query::parse("Q(U,V) :- R(U,V), S(V,U).");
  const Json inequality = Json::parse(R"({"terms": [
    {"U": ["U"], "V": ["V"], "p": 2, "weight": "2/3"},
    {"U": ["V"], "V": ["U"], "p": 2, "weight": "2/3"}]})");
  const Json gamma = commands::check_inequality(q, inequality, Cone::kPolymatroid);
  CHECK(gamma["valid"] == false);
  CHECK(gamma["gap_exact"] == "-1/3");
  CHECK(gamma["minimum_exact"] == "-1/9");
  CHECK(commands::check_inequality(q, inequality, Cone::kModular)["valid"] == true);
}
