#include <doctest.h>

#include <cmath>

#include "lpbound/error.hpp"
#include "lpbound/norm.hpp"
#include "lpbound/rational.hpp"

using namespace lpbound;

TEST_CASE("parse_rational reads decimals exactly") {
  CHECK(parse_rational("0.8") == Rational(4, 5));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5E2") == Rational(250));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("dyadic rounds to the nearest multiple of 2^-40") {
  CHECK(dyadic(0.5) == Rational(1, 2));
  CHECK(dyadic(3.0) == Rational(3));
  const Rational third = dyadic(1.0 / 3.0);
  CHECK(third.get_den() == mpz_class(1) << kDyadicBits);
  CHECK(std::fabs(third.get_d() - 1.0 / 3.0) <= std::ldexp(1.0, -kDyadicBits));
  CHECK_THROWS_AS(dyadic(NAN), Error);
  CHECK_THROWS_AS(dyadic(INFINITY), Error);
}

TEST_CASE("to_string is canonical") {
  CHECK(to_string(Rational(6, 8)) == "3/4");
  CHECK(to_string(Rational(4)) == "4");
  CHECK(to_string(Rational(-1, 3)) == "-1/3");
}

TEST_CASE("floor_exp2 snaps values a hair below an integer log") {
  CHECK(floor_exp2(Rational(10)) == 1024);
  CHECK(floor_exp2(Rational(0)) == 1);
  CHECK(floor_exp2(dyadic(std::log2(1000.0))) == 1000);
  CHECK(floor_exp2(Rational(1, 2)) == 1);
  CHECK(floor_exp2(Rational(3, 2)) == 2);
}

TEST_CASE("NormIndex") {
  CHECK(NormIndex::parse("inf").is_infinite());
  CHECK(NormIndex::parse("∞").is_infinite());
  CHECK(NormIndex::parse("3/2").value() == Rational(3, 2));
  CHECK(NormIndex::parse("2.5").value() == Rational(5, 2));
  CHECK(NormIndex(2).inverse() == Rational(1, 2));
  CHECK(NormIndex::infinity().inverse() == 0);
  CHECK(NormIndex(1) < NormIndex(2));
  CHECK(NormIndex(100) < NormIndex::infinity());
  CHECK_FALSE(NormIndex::infinity() < NormIndex(3));
  CHECK(NormIndex::parse("inf") == NormIndex::infinity());
  CHECK_THROWS_AS(NormIndex(0), Error);
  CHECK_THROWS_AS(NormIndex(Rational(-1, 2)), Error);
  CHECK_THROWS_AS(NormIndex::parse("zero"), Error);
}
