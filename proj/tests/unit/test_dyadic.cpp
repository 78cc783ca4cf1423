#include <doctest.h>

#include "hmsrep/dyadic.hpp"
#include "hmsrep/error.hpp"
#include "support/oracles.hpp"

using namespace hmsrep;

namespace {

BitStream bs(std::vector<std::uint8_t> pre, std::vector<std::uint8_t> period) { return BitStream{pre, period}; }

std::vector<int> first_bits(const BitStream& s, unsigned n) {
  std::vector<int> out;
  for (Index i = 1; i <= n; ++i) out.push_back(s.bit(i));
  return out;
}

}  // namespace

TEST_CASE("greedy expansion") {
  CHECK(expand_greedy(Rational(3, 4)) == bs({1, 0}, {1}));
  CHECK(expand_greedy(Rational(0)) == bs({}, {0}));
  CHECK(expand_greedy(Rational(1, 3)) == bs({}, {0, 1}));
  CHECK(expand_greedy(Rational(1)) == bs({}, {1}));
  CHECK(expand_greedy(Rational(1, 2)) == bs({0}, {1}));
}

TEST_CASE("terminating expansion") {
  CHECK(expand_terminating(Rational(3, 4)) == bs({1, 1}, {0}));
  CHECK(expand_terminating(Rational(1, 2)) == bs({1}, {0}));
  CHECK(expand_terminating(Rational(5, 6)) == bs({1}, {1, 0}));
  CHECK(expand_terminating(Rational(1)) == bs({}, {1}));
  CHECK(first_bits(expand_terminating(Rational(5, 6)), 5) == std::vector<int>{1, 1, 0, 1, 0});
}

TEST_CASE("expansions reject values outside [0, 1]") {
  CHECK_THROWS_AS(expand_greedy(Rational(3, 2)), Error);
  CHECK_THROWS_AS(expand_terminating(Rational(-1, 2)), Error);
}

TEST_CASE("count_expansions") {
  CHECK(count_expansions(Rational(3, 4)) == 2);
  CHECK(count_expansions(Rational(1, 3)) == 1);
  CHECK(count_expansions(Rational(0)) == 1);
  CHECK(count_expansions(Rational(1)) == 1);
}

TEST_CASE("digit") {
  CHECK(digit(Rational(3, 4), 1) == 1);
  CHECK(digit(Rational(3, 4), 2) == 1);
  CHECK(digit(Rational(3, 4), 3) == 0);
  for (Index l = 1; l <= 70; ++l) {
    CHECK(digit(Rational(1), l) == 1);
    CHECK(digit(Rational(0), l) == 0);
    CHECK(digit(1.0, l) == 1);
    CHECK(digit(0.0, l) == 0);
  }
  CHECK(digit(0.75, 2) == 1);
  CHECK(digit(0.75, 3) == 0);
}

TEST_CASE("resum and partial sums") {
  CHECK(resum(bs({1, 0}, {1})) == Rational(3, 4));
  CHECK(resum(bs({}, {0, 1})) == Rational(1, 3));
  CHECK(resum(bs({}, {0})) == Rational(0));
  CHECK(partial_sum(bs({1, 0}, {1}), 3) == Rational(5, 8));
}

TEST_CASE("canonicalize reaches the minimal form") {
  // 1,0,1,0,1,... is purely periodic
  CHECK(canonicalize(bs({1, 0, 1}, {0, 1, 0, 1})) == bs({}, {1, 0}));
  CHECK(canonicalize(bs({0, 1, 1}, {0, 1, 0, 1})) == bs({0, 1}, {1, 0}));
  CHECK(canonicalize(bs({0, 0}, {0, 0})) == bs({}, {0}));
  CHECK(canonicalize(bs({1, 1}, {1})) == bs({}, {1}));
  const auto c = canonicalize(bs({0, 1, 1}, {0, 1, 1}));
  CHECK(resum(c) == resum(bs({0, 1, 1}, {0, 1, 1})));
  CHECK(c.period.size() == 3);
  CHECK(c.pre.empty());
}

TEST_CASE("complement resums to one minus") {
  const auto s = expand_terminating(Rational(5, 6));
  CHECK(resum(s.complement()) == Rational(1, 6));
}

TEST_CASE("unique subset sums") {
  CHECK(unique_sums_check(1));
  CHECK(unique_sums_check(3));
  CHECK(unique_sums_check(16));
  CHECK_THROWS_AS(unique_sums_check(21), Error);
}

TEST_CASE("expansions agree with long-division digits") {
  oracle::Gen gen(11);
  for (int t = 0; t < 300; ++t) {
    const oracle::Frac f = gen.unit_rational(200);
    const Rational a = oracle::to_rational(f);
    CHECK(first_bits(expand_greedy(a), 40) == oracle::greedy_digits(f, 40));
    CHECK(first_bits(expand_terminating(a), 40) == oracle::terminating_digits(f, 40));
    for (unsigned l = 1; l <= 40; ++l) CHECK(digit(a, l) == oracle::digit(f, l));
  }
}

TEST_CASE("to_string") { CHECK(to_string(bs({1, 0}, {1})) == "1,0|1"); }

TEST_CASE("greedy digits on demand") {
  // 3/4 = 0.1011...
  CHECK(greedy_digit(Rational(3, 4), 1) == 1);
  CHECK(greedy_digit(Rational(3, 4), 2) == 0);
  CHECK(greedy_digit(Rational(3, 4), 3) == 1);
  CHECK(greedy_digit(Rational(3, 4), 1000) == 1);
  CHECK(greedy_digit(Rational(1), 7) == 1);
  CHECK(greedy_digit(Rational(0), 7) == 0);
  CHECK(greedy_digit(Rational(1, 2), 1) == 0);
  CHECK(greedy_digit(Rational(1, 2), 2) == 1);
  // 1/3 = 0.0101...
  CHECK(greedy_digit(Rational(1, 3), 5) == 0);
  CHECK(greedy_digit(Rational(1, 3), 6) == 1);
  CHECK_THROWS_AS(greedy_digit(Rational(1, 3), 0), Error);
}

TEST_CASE("bounded expansion") {
  CHECK(expand_greedy_bounded(Rational(1, 3), 2) == expand_greedy(Rational(1, 3)));
  CHECK_FALSE(expand_greedy_bounded(Rational(1, 1000003), 64).has_value());
}
