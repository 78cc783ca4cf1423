#include <doctest.h>

#include "hmsrep/error.hpp"
#include "hmsrep/measures.hpp"
#include "support/oracles.hpp"

using namespace hmsrep;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::mismatch;
}

}  // namespace

TEST_CASE("make_finite sorts into normal form") {
  const auto m4 = make_finite({Rational(1, 3), Rational(5, 12), Rational(1, 4)});
  CHECK(to_string(m4) == "(5/12, 1/3, 1/4)");
  CHECK(to_string(make_finite({Rational(1)})) == "(1)");
  CHECK(m4 == parse_weights("1/4,1/3,5/12"));
}

TEST_CASE("make_finite rejects bad weights") {
  CHECK(code_of([] { make_finite({Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(1, 8)}); }) ==
        Errc::not_normalized);
  CHECK(code_of([] { make_finite({Rational(1), Rational(0)}); }) == Errc::non_positive_weight);
  CHECK(code_of([] { make_finite({Rational(3, 2), Rational(-1, 2)}); }) == Errc::non_positive_weight);
  CHECK(code_of([] { make_finite({}); }) == Errc::not_normalized);
  CHECK(code_of([] { parse_weights("1/2,1/3"); }) == Errc::not_normalized);
}

TEST_CASE("parse positions are relative to the whole list") {
  try {
    (void)parse_weights("2/3,1/x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("ClassOrder lists by size then descending weights") {
  const auto a = parse_weights("1");
  const auto b = parse_weights("3/4,1/4");
  const auto c = parse_weights("2/3,1/3");
  ClassOrder less;
  CHECK(less(a, b));
  CHECK(less(b, c));
  CHECK_FALSE(less(c, b));
  CHECK_FALSE(less(b, b));
}

TEST_CASE("family atoms") {
  CHECK(atom(CountableFamily::dyadic(), 3) == Rational(1, 8));
  CHECK(atom(CountableFamily::ternary_split(), 1) == Rational(1, 3));
  CHECK(atom(CountableFamily::ternary_split(), 2) == Rational(1, 3));
  CHECK(atom(CountableFamily::ternary_split(), 4) == Rational(1, 12));
  const Index idx[] = {2, 1};
  CHECK(atom(CountableFamily::product_geometric(3), idx) == Rational(1, 8));
  const auto u3 = CountableFamily::uniform_dyadic(3);
  CHECK(atom(u3, 1) == Rational(1, 3));
  CHECK(atom(u3, 2) == Rational(1, 3));
  CHECK(atom(u3, 3) == Rational(1, 6));
  CHECK(atom(u3, 4) == Rational(1, 12));
  const auto u2 = CountableFamily::uniform_dyadic(2);
  CHECK(atom(u2, 1) == Rational(1, 2));
  CHECK(atom(u2, 2) == Rational(1, 4));
  CHECK(atom(u2, 3) == Rational(1, 8));
  CHECK(code_of([] { atom(CountableFamily::dyadic(), Index{0}); }) == Errc::invalid_argument);
  const Index bad[] = {1, 1, 1};
  CHECK(code_of([&] { atom(CountableFamily::product_geometric(3), bad); }) == Errc::index_arity);
}

TEST_CASE("tail masses match the closed forms and partial sums") {
  CHECK(tail_mass(CountableFamily::dyadic(), 3) == Rational(1, 8));
  CHECK(tail_mass(CountableFamily::ternary_split(), 2) == Rational(1, 3));
  CHECK(tail_mass(CountableFamily::uniform_dyadic(4), 4) == Rational(1, 8));
  for (const auto& f : {CountableFamily::dyadic(), CountableFamily::ternary_split(), CountableFamily::uniform_dyadic(1),
                        CountableFamily::uniform_dyadic(5)}) {
    Rational head;
    for (Index k = 0; k <= 12; ++k) {
      CHECK_MESSAGE(head + tail_mass(f, k) == Rational(1), f.str() << " K=" << k);
      head += atom(f, k + 1);
    }
  }
  // Product family: every coordinate beyond K.
  const auto p = CountableFamily::product_geometric(3);
  CHECK(tail_mass(p, 2) == Rational(1, 16));
}

TEST_CASE("halving start") {
  CHECK(halving_start(CountableFamily::dyadic()) == Index{1});
  CHECK(halving_start(CountableFamily::ternary_split()) == Index{2});
  CHECK(halving_start(CountableFamily::uniform_dyadic(4)) == Index{3});
  CHECK_FALSE(halving_start(CountableFamily::product_geometric(3)).has_value());
  for (const auto& f : {CountableFamily::dyadic(), CountableFamily::ternary_split(), CountableFamily::uniform_dyadic(4)}) {
    const Index s = *halving_start(f);
    for (Index i = s; i < s + 8; ++i) CHECK(atom(f, i + 1) * Rational(2) == atom(f, i));
    if (s > 1) CHECK(atom(f, s) * Rational(2) != atom(f, s - 1));
  }
}

TEST_CASE("classify") {
  CHECK(to_string(classify(parse_weights("2/3,1/3"))) == "FiniteClass(2)");
  CHECK(std::holds_alternative<CountableClass>(classify(CountableFamily::dyadic())));
  CHECK(std::holds_alternative<ContinuousClass>(classify(ContinuousSpace{})));
  const auto c = classify(ContinuousWithAtom{Rational(1, 4)});
  REQUIRE(std::holds_alternative<ContinuousWithAtomClass>(c));
  CHECK(std::get<ContinuousWithAtomClass>(c).a == Rational(1, 4));
  CHECK(code_of([] { classify(ContinuousWithAtom{Rational(1)}); }) == Errc::invalid_argument);
}

TEST_CASE("family names round-trip") {
  for (const auto& f : {CountableFamily::dyadic(), CountableFamily::ternary_split(), CountableFamily::uniform_dyadic(4),
                        CountableFamily::product_geometric(3)}) {
    CHECK(CountableFamily::from_name(f.name(), f.parameter()) == f);
  }
  CHECK(CountableFamily::uniform_dyadic(4).str() == "UniformDyadic(4)");
  CHECK(code_of([] { CountableFamily::from_name("cantor"); }) == Errc::invalid_argument);
}
