#include <doctest.h>

#include <sstream>

#include "hmsrep/error.hpp"
#include "hmsrep/rational.hpp"

using hmsrep::Errc;
using hmsrep::Error;
using hmsrep::ParseError;
using hmsrep::Rational;

TEST_CASE("parse accepts p/q and integers") {
  CHECK(Rational::parse("2/3") == Rational(2, 3));
  CHECK(Rational::parse("4/6") == Rational(2, 3));
  CHECK(Rational::parse("1") == Rational(1));
  CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  CHECK(Rational::parse(" 5/12 ") == Rational(5, 12));
}

TEST_CASE("parse errors carry the offending position") {
  auto position_of = [](const char* text) -> std::size_t {
    try {
      (void)Rational::parse(text);
    } catch (const ParseError& e) {
      CHECK(e.code() == Errc::parse_error);
      return e.position();
    }
    FAIL("no ParseError for " << text);
    return 0;
  };
  CHECK(position_of("2/x") == 2);
  CHECK(position_of("2/3z") == 3);
  CHECK_THROWS_AS((void)Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS((void)Rational::parse(""), ParseError);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1) - Rational(1, 12) == Rational(11, 12));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(hmsrep::abs(Rational(-3, 4)) == Rational(3, 4));
}

TEST_CASE("string forms") {
  CHECK(Rational(2, 3).str() == "2/3");
  CHECK(Rational(1).str() == "1");
  CHECK(Rational(1).fraction_str() == "1/1");
  CHECK(Rational(0).fraction_str() == "0/1");
  std::ostringstream os;
  os << Rational(5, 12);
  CHECK(os.str() == "5/12");
}

TEST_CASE("dyadic detection, floor, powers of two") {
  CHECK(Rational(3, 4).is_dyadic());
  CHECK(Rational(1).is_dyadic());
  CHECK_FALSE(Rational(1, 3).is_dyadic());
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-1, 2).floor() == -1);
  CHECK(Rational::pow2(-3) == Rational(1, 8));
  CHECK(Rational::pow2(4) == Rational(16));
}

TEST_CASE("from_double is exact") {
  CHECK(Rational::from_double(0.75) == Rational(3, 4));
  CHECK(Rational::from_double(0.1) != Rational(1, 10));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
}
