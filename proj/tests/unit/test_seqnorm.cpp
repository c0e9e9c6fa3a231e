#include <doctest.h>

#include <algorithm>
#include <random>

#include "lpbound/error.hpp"
#include "lpbound/seqnorm.hpp"

using namespace lpbound;

TEST_CASE("power sums and elementary symmetric polynomials") {
  const std::vector<std::uint64_t> degrees{2, 2, 1};
  const auto sums = sequence_to_power_sums(degrees);
  CHECK(sums == std::vector<Rational>{5, 9, 17});
  CHECK(elementary_from_power_sums(sums) == std::vector<Rational>{5, 8, 4});
  CHECK(power_sums_to_sequence(sums) == std::vector<double>{2, 2, 1});
}

TEST_CASE("non-realizable power sums are rejected") {
  const std::vector<Rational> negative_root{1, 5};  // roots 2 and -1
  CHECK_THROWS_AS(power_sums_to_sequence(negative_root), Error);
  const std::vector<Rational> complex_roots{0, -2};  // x^2 + 1
  CHECK_THROWS_AS(power_sums_to_sequence(complex_roots), Error);
}

TEST_CASE("zeros and non-integer roots") {
  const std::vector<std::uint64_t> with_zero{3, 0};
  CHECK(power_sums_to_sequence(sequence_to_power_sums(with_zero)) == std::vector<double>{3, 0});
  // Roots 2 +- sqrt(2).
  const std::vector<Rational> sums{4, 12};
  const auto roots = power_sums_to_sequence(sums);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-8));
  CHECK(roots[1] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("polynomial arithmetic") {
  // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2
  const Polynomial f({-2, 5, -4, 1});
  CHECK(f(Rational(1)) == 0);
  CHECK(f(Rational(2)) == 0);
  CHECK(f.derivative() == Polynomial({5, -8, 3}));
  const auto [quotient, remainder] = Polynomial::divide(f, Polynomial({-1, 1}));
  CHECK(remainder.is_zero());
  CHECK(quotient == Polynomial({2, -3, 1}));
  CHECK(Polynomial::gcd(f, f.derivative()) == Polynomial({-1, 1}));
  const auto parts = square_free_decomposition(f);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Polynomial({-2, 1}));
  CHECK(parts[1] == Polynomial({-1, 1}));
  const auto roots = real_roots(Polynomial({2, -3, 1}));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.0));
  CHECK(roots[1] == doctest::Approx(2.0));
}

TEST_CASE("round trip over random sequences with repeats") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> length(1, 8);
    std::uniform_int_distribution<std::uint64_t> degree(0, 40);
    std::vector<std::uint64_t> sequence(length(rng));
    for (auto& d : sequence) d = degree(rng) / 4;  // encourages repeats
    std::sort(sequence.rbegin(), sequence.rend());
    const auto back = power_sums_to_sequence(sequence_to_power_sums(sequence));
    std::vector<double> expected(sequence.begin(), sequence.end());
    CHECK(back == expected);
  }
}
