#include <doctest.h>

#include "hmsrep/error.hpp"
#include "hmsrep/order.hpp"
#include "support/oracles.hpp"

using namespace hmsrep;

namespace {

FiniteMeasure w(const char* s) { return parse_weights(s); }

// Mass of the first `depth` atoms of a block, summed atom by atom.
Rational truncated_mass(const CountableFamily& f, const CountableBlock& b, Index depth) {
  Rational m;
  for (Index i = 1; i <= depth; ++i) {
    if (b.contains(i)) m += atom(f, i);
  }
  return m;
}

}  // namespace

TEST_CASE("two outcomes into dyadic use the terminating expansion") {
  const auto a = leq_finite_countable(w("3/4,1/4"), CountableFamily::dyadic());
  REQUIRE(a);
  CHECK(a->blocks[0].atoms == std::set<Index>{1, 2});
  CHECK(std::holds_alternative<std::monostate>(a->blocks[0].tail));
  CHECK(a->blocks[1].tail == BlockTail{AllFrom{3}});
  CHECK(block_mass(a->family, a->blocks[0]) == Rational(3, 4));
  CHECK(block_mass(a->family, a->blocks[1]) == Rational(1, 4));
  CHECK(verify_assignment(*a));
}

TEST_CASE("ternary split blocks") {
  const auto a = leq_finite_countable(w("1/2,1/2"), CountableFamily::ternary_split());
  REQUIRE(a);
  CHECK(a->blocks[0].atoms == std::set<Index>{1, 3});
  CHECK(block_mass(a->family, a->blocks[0]) == Rational(1, 2));
  CHECK(verify_assignment(*a));
  const auto b = ternary_block(Rational(1, 2));
  CHECK(b.atoms == std::set<Index>{1, 3});
  CHECK(block_mass(CountableFamily::ternary_split(), ternary_block(Rational(1))) == Rational(1));
  CHECK(block_mass(CountableFamily::ternary_split(), ternary_block(Rational(0))) == Rational(0));
  CHECK(block_mass(CountableFamily::ternary_split(), ternary_block(Rational(2, 3))) == Rational(2, 3));
}

TEST_CASE("ternary blocks have exact mass for random a") {
  oracle::Gen gen(23);
  const auto f = CountableFamily::ternary_split();
  for (int t = 0; t < 200; ++t) {
    const Rational a = oracle::to_rational(gen.unit_rational(500));
    const auto b = ternary_block(a);
    CHECK(block_mass(f, b) == a);
    // Independent check: the first 40 atoms fall short of a by at most the tail.
    const Rational head = truncated_mass(f, b, 40);
    CHECK(head <= a);
    CHECK(a - head <= tail_mass(f, 40));
  }
}

TEST_CASE("single outcome takes every atom") {
  for (const auto& f : {CountableFamily::dyadic(), CountableFamily::ternary_split(), CountableFamily::uniform_dyadic(3)}) {
    const auto a = leq_finite_countable(w("1"), f);
    REQUIRE(a);
    CHECK(a->blocks[0].tail == BlockTail{AllFrom{1}});
    CHECK(block_mass(f, a->blocks[0]) == Rational(1));
  }
}

TEST_CASE("dyadic partitions with more than two outcomes") {
  auto a = leq_finite_countable(w("1/2,1/4,1/4"), CountableFamily::dyadic());
  REQUIRE(a);
  CHECK(verify_assignment(*a));
  a = leq_finite_countable(w("7/12,1/4,1/6"), CountableFamily::dyadic());
  REQUIRE(a);
  CHECK(verify_assignment(*a));
  // A non-dyadic mass has exactly one subset of dyadic atoms (its binary
  // expansion), so a repeated non-dyadic weight forces two equal blocks.
  CHECK(oracle::greedy_digits(oracle::Frac(2, 5), 8) == std::vector<int>{0, 1, 1, 0, 0, 1, 1, 0});
  CHECK_FALSE(leq_finite_countable(w("2/5,2/5,1/5"), CountableFamily::dyadic()));
  CHECK_FALSE(leq_finite_countable(w("1/2,1/6,1/6,1/6"), CountableFamily::dyadic()));
  // Both subsets of mass 3/8 contain atom 2.
  CHECK_FALSE(leq_finite_countable(w("3/8,3/8,1/4"), CountableFamily::dyadic()));
  // 1/3 is non-dyadic, so all three blocks would be {2, 4, 6, ...}.
  CHECK_FALSE(leq_finite_countable(w("1/3,1/3,1/3"), CountableFamily::dyadic()));
}

TEST_CASE("dyadic search agrees with truncated brute force on random measures") {
  oracle::Gen gen(31);
  int found = 0;
  for (int t = 0; t < 40; ++t) {
    const auto m = gen.finite(gen.uniform(3, 4), 12);
    const auto a = leq_finite_countable(m, CountableFamily::dyadic());
    if (!a) continue;
    ++found;
    CHECK(verify_assignment(*a));
    for (std::size_t k = 0; k < m.size(); ++k) {
      const Rational head = truncated_mass(a->family, a->blocks[k], 30);
      CHECK(head <= m[k]);
      CHECK(m[k] - head <= tail_mass(a->family, 30));
    }
  }
  CHECK(found > 0);
}

TEST_CASE("unsupported targets") {
  CHECK_THROWS_AS(leq_finite_countable(w("1/2,1/2"), CountableFamily::product_geometric(3)), Error);
  CHECK_THROWS_AS(leq_finite_countable(w("1/2,1/4,1/4"), CountableFamily::ternary_split()), Error);
  CHECK_THROWS_AS(leq_finite_countable(w("1/2,1/2"), CountableFamily::uniform_dyadic(3)), Error);
}

TEST_CASE("from_indicator normal form") {
  // 0,1,1,0,1,0,1,0,... from atom 1
  const auto b = CountableBlock::from_indicator(BitStream{{0, 1, 1}, {0, 1}}, 1, 1);
  // the tail starts as early as possible: atoms 3, 5, 7, ...
  CHECK(b.atoms == std::set<Index>{2});
  const auto* rule = std::get_if<BitRule>(&b.tail);
  REQUIRE(rule);
  CHECK(rule->first_atom == 3);
  CHECK(rule->bits == BitStream{{}, {1, 0}});
  CHECK(rule->value == Rational(2, 3));
  for (Index i = 4; i < 20; ++i) CHECK(b.contains(i) == (i % 2 == 1));
  const auto floor5 = CountableBlock::from_indicator(BitStream{{0, 1, 1}, {0, 1}}, 1, 5);
  CHECK(floor5.atoms == std::set<Index>{2, 3});
  CHECK(std::get<BitRule>(floor5.tail).first_atom == 5);
  for (Index i = 1; i < 20; ++i) CHECK(floor5.contains(i) == b.contains(i));
}

TEST_CASE("verify_assignment catches overlaps and gaps") {
  auto a = *leq_finite_countable(w("3/4,1/4"), CountableFamily::dyadic());
  auto bad = a;
  bad.blocks[1].tail = AllFrom{4};
  bad.blocks[1].atoms = {3};
  CHECK(verify_assignment(bad));
  bad.blocks[1].atoms = {};
  CHECK_FALSE(verify_assignment(bad));
  bad = a;
  bad.blocks[0].atoms = {1, 2, 3};
  bad.blocks[0].tail = std::monostate{};
  CHECK_FALSE(verify_assignment(bad));
}

TEST_CASE("dyadic search respects its state limit") {
  CHECK_THROWS_AS(dyadic_partition_search(w("7/12,1/4,1/6"), 2), Error);
  CHECK(dyadic_partition_search(w("7/12,1/4,1/6"), 5).has_value());
}
