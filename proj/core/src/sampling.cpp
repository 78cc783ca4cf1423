#include <algorithm>
#include <bit>
#include <cmath>

#include "hmsrep/error.hpp"
#include "hmsrep/hms.hpp"

namespace hmsrep {

namespace {

constexpr unsigned kUnitBits = 53;

// floor(a * 2^53): the grid point k / 2^53 satisfies k / 2^53 <= a iff k <= this.
std::uint64_t unit_floor(const Rational& a) {
  return (a * Rational::pow2(kUnitBits)).floor().get_ui();
}

// ceil(c * 2^53): the grid point k / 2^53 satisfies k / 2^53 >= c iff k >= this.
std::uint64_t unit_ceiling(const Rational& c) {
  mpz_class scaled = c.numerator();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), kUnitBits);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), c.denominator().get_mpz_t());
  return q.get_ui();
}

}  // namespace

ContextSampler::ContextSampler(std::uint64_t seed) : engine_(seed) {}

Index ContextSampler::geometric() {
  // Count fair flips up to and including the first head.
  Index k = 0;
  while (true) {
    const std::uint64_t word = engine_();
    if (word == 0) {
      k += 64;
      continue;
    }
    return k + static_cast<Index>(std::countr_zero(word)) + 1;
  }
}

std::uint64_t ContextSampler::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const int width = std::bit_width(bound - 1);
  while (true) {
    const std::uint64_t r = engine_() >> (64 - width);
    if (r < bound) return r;
  }
}

std::uint64_t ContextSampler::unit_numerator() { return engine_() >> (64 - kUnitBits); }

std::vector<Index> ContextSampler::atom(const CountableFamily& f) {
  switch (f.kind()) {
    case CountableFamily::Kind::dyadic:
      return {geometric()};
    case CountableFamily::Kind::uniform_dyadic: {
      const std::uint64_t n = f.parameter();
      const std::uint64_t r = below(n);
      if (r + 1 < n) return {r + 1};
      return {n - 1 + geometric()};
    }
    case CountableFamily::Kind::ternary_split: {
      const std::uint64_t r = below(3);
      if (r < 2) return {r + 1};
      return {2 + geometric()};
    }
    case CountableFamily::Kind::product_geometric: {
      std::vector<Index> out(f.index_arity());
      for (auto& c : out) c = geometric();
      return out;
    }
  }
  return {};
}

SampleReport sample(const Hms& h, const State& state, std::uint64_t seed, std::uint64_t n) {
  if (n < 1) throw Error(Errc::invalid_argument, "sample count must be >= 1");
  // Validates the state against the rule and yields the exact reference.
  std::optional<OutcomeDistribution> exact;
  try {
    exact = exact_probabilities(h, state);
  } catch (const Error& e) {
    if (e.code() != Errc::irrational_overlap) throw;
  }

  SampleReport report;
  report.seed = seed;
  report.n = n;
  report.outcomes.assign(h.outcomes().begin(), h.outcomes().end());
  report.counts.assign(report.outcomes.size(), 0);
  report.exact = std::move(exact);
  ContextSampler rng(seed);

  if (const auto* r = std::get_if<ThresholdRule>(&h.rule())) {
    const auto& cuts = r->cuts[std::get<std::size_t>(state)];
    std::vector<std::uint64_t> inner;
    for (std::size_t j = 1; j + 1 < cuts.size(); ++j) inner.push_back(unit_ceiling(cuts[j]));
    for (std::uint64_t s = 0; s < n; ++s) {
      const std::uint64_t k = rng.unit_numerator();
      std::size_t j = 0;
      while (j < inner.size() && k >= inner[j]) ++j;
      ++report.counts[j];
    }
  } else if (const auto* r = std::get_if<ProductBitsRule>(&h.rule())) {
    const auto& q = r->q[std::get<std::size_t>(state)].q;
    // The first 64 greedy bits of each Q are cached; deeper draws (rate
    // 2^-64) compute the bit directly.
    std::vector<std::uint64_t> head(q.size(), 0);
    for (std::size_t j = 0; j < q.size(); ++j) {
      for (Index i = 1; i <= 64; ++i) head[j] |= std::uint64_t(greedy_digit(q[j], i)) << (i - 1);
    }
    for (std::uint64_t s = 0; s < n; ++s) {
      // Coordinates are independent, so drawing them lazily in order is exact.
      std::size_t j = 0;
      for (; j < q.size(); ++j) {
        const Index i = rng.geometric();
        if (i <= 64 ? (head[j] >> (i - 1)) & 1u : greedy_digit(q[j], i)) break;
      }
      ++report.counts[j];
    }
  } else if (const auto* r = std::get_if<SphereDiameterRule>(&h.rule())) {
    const SpinState& sp = std::get<SpinState>(state);
    if (sp.overlap) {
      // p_u iff 2 lambda - 1 <= c, i.e. lambda <= (1 + c) / 2.
      const std::uint64_t last_up = unit_floor((Rational(1) + *sp.overlap) / Rational(2));
      for (std::uint64_t s = 0; s < n; ++s) ++report.counts[rng.unit_numerator() <= last_up ? 0 : 1];
    } else {
      const double c = r->u.dot(sp.v);
      for (std::uint64_t s = 0; s < n; ++s) {
        const double lambda = std::ldexp(static_cast<double>(rng.unit_numerator()), -static_cast<int>(kUnitBits));
        ++report.counts[2.0 * lambda - 1.0 <= c ? 0 : 1];
      }
    }
  } else {
    const auto& band = std::get<SphereBandRule>(h.rule());
    const SpinState& sp = std::get<SpinState>(state);
    if (sp.overlap) {
      const BitStream digits = expand_terminating((Rational(1) + *sp.overlap) / Rational(2));
      for (std::uint64_t s = 0; s < n; ++s) ++report.counts[digits.bit(rng.geometric()) ? 0 : 1];
    } else {
      const double a = std::clamp((1.0 + band.u.dot(sp.v)) / 2.0, 0.0, 1.0);
      for (std::uint64_t s = 0; s < n; ++s) ++report.counts[digit(a, rng.geometric()) ? 0 : 1];
    }
  }
  return report;
}

}  // namespace hmsrep
