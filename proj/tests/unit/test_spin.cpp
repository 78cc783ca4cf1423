#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hmsrep/error.hpp"
#include "hmsrep/spin.hpp"
#include "support/oracles.hpp"

using namespace hmsrep;

namespace {

const BlochVector kZ{0.0, 0.0, 1.0};

std::vector<Rational> probs(const Hms& h, const SpinState& s) { return exact_probabilities(h, s).probabilities; }

}  // namespace

TEST_CASE("Bloch vectors") {
  const auto v = BlochVector::unit(3.0, 0.0, 4.0);
  CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  CHECK(v.x == doctest::Approx(0.6));
  CHECK_THROWS_AS(BlochVector::unit(0, 0, 0), Error);
  CHECK_THROWS_AS(BlochVector::unit(NAN, 0, 1), Error);
  const BlochVector u = BlochVector::unit(1, 2, 3);
  for (const Rational& c : {Rational(-1), Rational(-1, 3), Rational(0), Rational(1, 2), Rational(1)}) {
    const auto s = SpinState::at_overlap(u, c);
    CHECK(std::abs(s.v.norm() - 1.0) < 1e-12);
    CHECK(std::abs(u.dot(s.v) - c.to_double()) < 1e-12);
  }
  CHECK_THROWS_AS(SpinState::at_overlap(u, Rational(3, 2)), Error);
}

TEST_CASE("Born probability") {
  CHECK(born_probability(kZ, kZ) == 1.0);
  CHECK(born_probability(kZ, BlochVector{1, 0, 0}) == 0.5);
  const double t = std::numbers::pi / 3;
  CHECK(born_probability(kZ, BlochVector{std::sin(t), 0, std::cos(t)}) == doctest::Approx(0.75));
}

TEST_CASE("Aerts outcome on the diameter") {
  for (double l : {-1.0, -0.3, 0.0, 0.99, 1.0}) CHECK(aerts_outcome(kZ, kZ, l) == 0);
  const BlochVector perp{1, 0, 0};
  CHECK(aerts_outcome(kZ, perp, -0.5) == 0);
  CHECK(aerts_outcome(kZ, perp, 0.5) == 1);
  CHECK(aerts_outcome(kZ, perp, 0.0) == 0);
  CHECK_THROWS_AS(aerts_outcome(kZ, perp, 1.5), Error);
}

TEST_CASE("Aerts model probabilities") {
  const auto h = aerts_hms(kZ);
  CHECK(h.outcomes()[0] == "p_u");
  CHECK(probs(h, SpinState::at_overlap(kZ, Rational(0))) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(probs(h, SpinState::at_overlap(kZ, Rational(1, 2))) == std::vector<Rational>{Rational(3, 4), Rational(1, 4)});
  CHECK(probs(h, SpinState::at_overlap(kZ, Rational(-1))) == std::vector<Rational>{Rational(0), Rational(1)});
  // measure of {t : p_u} on the unit context, via exact grid points
  const auto s = SpinState::at_overlap(kZ, Rational(1, 2));
  CHECK(outcome_at_unit(h, s, Rational(3, 4)) == 0);
  CHECK(outcome_at_unit(h, s, Rational(3, 4) + Rational(1, 1000000)) == 1);
  CHECK_THROWS_AS(probs(h, SpinState::from_vector(BlochVector::unit(1, 1, 1))), Error);
}

TEST_CASE("reduced model outcomes") {
  const auto s = SpinState::at_overlap(kZ, Rational(1, 2));  // a = 3/4
  CHECK(reduced_outcome(kZ, s, 1) == 0);
  CHECK(reduced_outcome(kZ, s, 2) == 0);
  CHECK(reduced_outcome(kZ, s, 3) == 1);
  for (Index l = 1; l <= 30; ++l) {
    CHECK(reduced_outcome(kZ, SpinState::at_overlap(kZ, Rational(1)), l) == 0);
    CHECK(reduced_outcome(kZ, SpinState::at_overlap(kZ, Rational(-1)), l) == 1);
    CHECK(reduced_outcome(kZ, SpinState::from_vector(kZ), l) == 0);
  }
}

TEST_CASE("reduced model probabilities") {
  const auto h = reduced_hms(kZ);
  CHECK(probs(h, SpinState::at_overlap(kZ, Rational(1, 2))) == std::vector<Rational>{Rational(3, 4), Rational(1, 4)});
  CHECK(probs(h, SpinState::at_overlap(kZ, Rational(-1, 3))) == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
  CHECK(probs(h, SpinState::at_overlap(kZ, Rational(1))) == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK_THROWS_AS(probs(h, SpinState::from_vector(BlochVector::unit(1, 1, 1))), Error);
}

TEST_CASE("band layouts") {
  auto l = band_layout(1);
  REQUIRE(l.bands.size() == 2);
  CHECK(l.bands[0].lo == Rational(1, 2));
  CHECK(l.bands[0].outcome == "o1");
  l = band_layout(2);
  REQUIRE(l.bands.size() == 4);
  CHECK(l.bands[0].outcome == "o1");
  CHECK(l.bands[1].outcome == "o2");
  CHECK(l.bands[2].outcome == "o1");
  CHECK(l.bands[3].outcome == "o2");
  CHECK(l.bands[0].lo == Rational(3, 4));
  CHECK(l.bands[1].lo == Rational(1, 2));
  CHECK(l.bands[2].lo == Rational(1, 4));
  CHECK(band_layout(3).bands.size() == 8);
  CHECK(band_layout(3).bands[0].theta_top == 0.0);
  CHECK(band_layout(3).bands.back().theta_bottom == doctest::Approx(std::numbers::pi));
  CHECK_THROWS_AS(band_layout(0), Error);
  CHECK_THROWS_AS(band_layout(21), Error);
}

TEST_CASE("equivalence report") {
  std::vector<SpinState> states;
  for (const Rational& c : {Rational(-1), Rational(0), Rational(1), Rational(1, 2)}) {
    states.push_back(SpinState::at_overlap(kZ, c));
  }
  const auto r = equivalence_report(kZ, states, 1000000, 42);
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) {
    REQUIRE(row.aerts_exact);
    REQUIRE(row.reduced_exact);
    CHECK(*row.aerts_exact == *row.reduced_exact);
    CHECK(row.aerts_exact->to_double() == doctest::Approx(row.born).epsilon(1e-15));
  }
  CHECK(*r.rows[3].aerts_exact == Rational(3, 4));
  CHECK(r.pass());
  // Born column is monotone along a polar-angle grid
  std::vector<SpinState> grid;
  for (int k = 0; k < 20; ++k) {
    const double t = std::numbers::pi * k / 19;
    grid.push_back(SpinState::from_vector(BlochVector::unit(std::sin(t), 0, std::cos(t))));
  }
  const auto g = equivalence_report(kZ, grid, 20000, 1);
  for (std::size_t i = 1; i < g.rows.size(); ++i) CHECK(g.rows[i].born <= g.rows[i - 1].born);
  CHECK_FALSE(g.rows[5].aerts_exact.has_value());
  CHECK(g.pass());
}

TEST_CASE("four sigma rule") {
  CHECK(within_four_sigma(0.0, 0, 10));
  CHECK_FALSE(within_four_sigma(0.0, 1, 10));
  CHECK(within_four_sigma(1.0, 10, 10));
  CHECK(within_four_sigma(0.5, 5000, 10000));
  CHECK_FALSE(within_four_sigma(0.5, 5300, 10000));
}

TEST_CASE("rationalize") {
  CHECK(rationalize(0.75, 1e-12) == Rational(3, 4));
  CHECK(rationalize(1.0 / 3.0, 1e-12) == Rational(1, 3));
  CHECK(rationalize(0.0, 1e-12) == Rational(0));
  const double x = 0.123456789;
  CHECK(std::abs(rationalize(x, 1e-12).to_double() - x) <= 1e-12);
}

TEST_CASE("projective measurements") {
  using C = std::complex<double>;
  const std::vector<Amplitudes> std2{{C(1), C(0)}, {C(0), C(1)}};
  CHECK(pvm_measure({C(1), C(0)}, std2) == parse_weights("1"));
  const double r = 1 / std::sqrt(2.0);
  CHECK(pvm_measure({C(r), C(r)}, std2) == parse_weights("1/2,1/2"));
  CHECK(pvm_measure({C(std::sqrt(3.0) / 2), C(0.5)}, std2) == parse_weights("3/4,1/4"));
  CHECK(pvm_measure({C(0, std::sqrt(3.0) / 2), C(0.5, 0)}, std2) == parse_weights("3/4,1/4"));
  // rotated basis
  const std::vector<Amplitudes> hadamard{{C(r), C(r)}, {C(r), C(-r)}};
  CHECK(pvm_measure({C(1), C(0)}, hadamard) == parse_weights("1/2,1/2"));

  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::mismatch;
  };
  CHECK(code_of([&] { pvm_measure({C(1), C(1)}, std2); }) == Errc::not_normalized);
  CHECK(code_of([&] { pvm_measure({C(1), C(0)}, {{C(1), C(0)}, {C(1), C(0)}}); }) == Errc::not_orthonormal);
  CHECK(code_of([&] { pvm_measure({C(1), C(0)}, {{C(1), C(0)}}); }) == Errc::not_orthonormal);
}
