#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "lpbound.h"

namespace {

struct Owned {
  char* text = nullptr;
  ~Owned() { lpb_string_free(text); }
  nlohmann::json json() const { return nlohmann::json::parse(text); }
};

}  // namespace

TEST_CASE("C API: query lifecycle and error codes") {
  lpb_query* q = nullptr;
  REQUIRE(lpb_query_parse("Q(X,Y,Z) :- R(X,Y), S(Y,Z), T(Z,X).", 0, &q) == LPB_OK);
  Owned printed;
  REQUIRE(lpb_query_to_string(q, &printed.text) == LPB_OK);
  CHECK(std::string(printed.text) == "Q(X,Y,Z) :- R(X,Y), S(Y,Z), T(Z,X).");

  lpb_query* bad = nullptr;
  CHECK(lpb_query_parse("Q(X) :- R(X", 0, &bad) == LPB_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(lpb_last_error()).size() > 0);
  CHECK(lpb_query_parse(nullptr, 0, &bad) == LPB_ERR_INVALID);
  CHECK(lpb_query_load("/nonexistent/query.txt", 0, &bad) == LPB_ERR_IO);

  Owned report;
  const char* stats = R"([{"atom":0,"U":[],"V":["X","Y"],"p":1,"b":4},
                          {"atom":1,"U":[],"V":["Y","Z"],"p":1,"b":4},
                          {"atom":2,"U":[],"V":["Z","X"],"p":1,"b":4}])";
  REQUIRE(lpb_bound(q, stats, "polymatroid", 0, nullptr, &report.text) == LPB_OK);
  CHECK(report.json()["log2_bound_exact"] == "6");
  Owned unused;
  CHECK(lpb_bound(q, "[{", "polymatroid", 0, nullptr, &unused.text) == LPB_ERR_PARSE);
  CHECK(lpb_bound(q, stats, "entropic", 0, nullptr, &unused.text) == LPB_ERR_INVALID);
  lpb_query_free(q);
}

TEST_CASE("C API: database round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "lpbound_capi_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "E.csv") << "src,dst\na,b\nb,c\nc,a\nb,a\n";
  lpb_query* q = nullptr;
  REQUIRE(lpb_query_parse("Q(X,Y,Z) :- E(X,Y), E(Y,Z), E(Z,X).", 0, &q) == LPB_OK);
  lpb_database* db = nullptr;
  REQUIRE(lpb_database_load(q, dir.c_str(), 0, &db) == LPB_OK);
  uint64_t size = 0;
  CHECK(lpb_database_size(db, "E", &size) == LPB_OK);
  CHECK(size == 4);
  CHECK(lpb_database_size(db, "F", &size) == LPB_ERR_NOT_FOUND);

  Owned json, csv;
  REQUIRE(lpb_evaluate(q, db, "generic", nullptr, nullptr, 0, 1, &json.text, &csv.text) == LPB_OK);
  CHECK(json.json()["count"] == 3);
  CHECK(std::string(csv.text).find("a,b,c") != std::string::npos);

  Owned compared, table;
  REQUIRE(lpb_compare(q, db, "agm;1,2,inf", -1, &compared.text, &table.text) == LPB_OK);
  CHECK(compared.json()["presets"].size() == 2);

  Owned violated;
  const char* tight = R"([{"atom":0,"U":[],"V":["X","Y"],"p":1,"b":1},
                          {"atom":1,"U":[],"V":["Y","Z"],"p":1,"b":1},
                          {"atom":2,"U":[],"V":["Z","X"],"p":1,"b":1}])";
  CHECK(lpb_evaluate(q, db, "partitioned", tight, nullptr, 1, 1, &violated.text, nullptr) == LPB_ERR_VIOLATED);

  lpb_database_free(db);
  lpb_query_free(q);
  lpb_query* missing = nullptr;
  REQUIRE(lpb_query_parse("Q(X) :- Nope(X).", 0, &missing) == LPB_OK);
  lpb_database* none = nullptr;
  CHECK(lpb_database_load(missing, dir.c_str(), 0, &none) != LPB_OK);
  lpb_query_free(missing);
  std::filesystem::remove_all(dir);
}

TEST_CASE("C API: convert") {
  Owned out;
  REQUIRE(lpb_convert("[2,2,1]", "sums", &out.text) == LPB_OK);
  CHECK(out.json()["power_sums"] == nlohmann::json::parse("[5,9,17]"));
  Owned rejected;
  CHECK(lpb_convert("[1,5]", "sequence", &rejected.text) == LPB_ERR_INVALID);
  CHECK(std::string(lpb_version()) == "1.0.0");
}
