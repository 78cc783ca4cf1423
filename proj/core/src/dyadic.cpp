#include "hmsrep/dyadic.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <map>
#include <sstream>

#include "hmsrep/error.hpp"

namespace hmsrep {

namespace {

void require_unit_interval(const Rational& a) {
  if (a.sign() < 0 || a > Rational(1)) {
    throw Error(Errc::invalid_argument, "expansion input " + a.str() + " outside [0, 1]");
  }
}

// Runs the doubling map on the scaled remainder until a state repeats. The
// remainder stays in [0, 1] and its denominator divides that of `a`, so the
// state space is finite.
template <class Rule>
std::optional<BitStream> expand(const Rational& a, Rule take_one, std::size_t max_length) {
  require_unit_interval(a);
  std::map<Rational, std::size_t> seen;
  std::vector<std::uint8_t> bits;
  Rational x = a;
  while (true) {
    auto [it, inserted] = seen.emplace(x, bits.size());
    if (!inserted) {
      BitStream out;
      out.pre.assign(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(it->second));
      out.period.assign(bits.begin() + static_cast<std::ptrdiff_t>(it->second), bits.end());
      return canonicalize(std::move(out));
    }
    if (bits.size() >= max_length) return std::nullopt;
    const Rational doubled = x * Rational(2);
    const bool one = take_one(doubled);
    bits.push_back(one ? 1 : 0);
    x = one ? doubled - Rational(1) : doubled;
  }
}

bool greedy_rule(const Rational& doubled) { return doubled > Rational(1); }

}  // namespace

std::uint8_t BitStream::bit(Index i) const {
  if (i == 0) throw Error(Errc::invalid_argument, "bit positions are 1-based");
  if (period.empty()) throw Error(Errc::invalid_argument, "bit stream has an empty period");
  if (i <= pre.size()) return pre[i - 1];
  return period[(i - 1 - pre.size()) % period.size()];
}

BitStream BitStream::complement() const {
  BitStream out = *this;
  for (auto& b : out.pre) b ^= 1u;
  for (auto& b : out.period) b ^= 1u;
  return out;
}

BitStream canonicalize(BitStream s) {
  if (s.period.empty()) throw Error(Errc::invalid_argument, "bit stream has an empty period");
  const std::size_t len = s.period.size();
  for (std::size_t d = 1; d < len; ++d) {
    if (len % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < len && periodic; ++i) periodic = s.period[i] == s.period[i - d];
    if (periodic) {
      s.period.resize(d);
      break;
    }
  }
  while (!s.pre.empty() && s.pre.back() == s.period.back()) {
    std::rotate(s.period.rbegin(), s.period.rbegin() + 1, s.period.rend());
    s.pre.pop_back();
  }
  return s;
}

std::optional<BitStream> expand_greedy_bounded(const Rational& a, std::size_t max_length) {
  return expand(a, greedy_rule, max_length);
}

BitStream expand_greedy(const Rational& a) { return *expand(a, greedy_rule, SIZE_MAX); }

BitStream expand_terminating(const Rational& a) {
  return *expand(a, [](const Rational& doubled) { return doubled >= Rational(1); }, SIZE_MAX);
}

int greedy_digit(const Rational& a, Index lambda) {
  require_unit_interval(a);
  if (lambda == 0) throw Error(Errc::invalid_argument, "digit positions are 1-based");
  if (a.sign() == 0) return 0;
  if (!a.is_dyadic()) return digit(a, lambda);
  // a = k / 2^e with k odd: the terminating digits up to e - 1, then 0, then
  // ones forever.
  const Index e = mpz_sizeinbase(a.denominator().get_mpz_t(), 2) - 1;
  if (lambda < e) return digit(a, lambda);
  return lambda == e ? 0 : 1;
}

int count_expansions(const Rational& a) {
  require_unit_interval(a);
  if (a.sign() == 0 || a == Rational(1)) return 1;
  return a.is_dyadic() ? 2 : 1;
}

int digit(const Rational& a, Index lambda) {
  require_unit_interval(a);
  if (lambda == 0) throw Error(Errc::invalid_argument, "digit positions are 1-based");
  if (a == Rational(1)) return 1;
  mpz_class scaled = a.numerator();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), lambda);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), a.denominator().get_mpz_t());
  return mpz_tstbit(q.get_mpz_t(), 0);
}

int digit(double a, Index lambda) {
  if (!(a >= 0.0 && a <= 1.0)) throw Error(Errc::invalid_argument, "digit input outside [0, 1]");
  if (lambda == 0) throw Error(Errc::invalid_argument, "digit positions are 1-based");
  if (a >= 1.0) return 1;
  // Doubles below 1 have at most 1074 fractional bits; deeper bits are 0.
  if (lambda > 1100) return 0;
  const double scaled = std::floor(std::ldexp(a, static_cast<int>(lambda)));
  return static_cast<int>(std::fmod(scaled, 2.0));
}

Rational resum(const BitStream& s) {
  if (s.period.empty()) throw Error(Errc::invalid_argument, "bit stream has an empty period");
  Rational head;
  for (std::size_t i = 0; i < s.pre.size(); ++i) {
    if (s.pre[i]) head += Rational::pow2(-static_cast<long>(i + 1));
  }
  // 0.(p_1..p_L) repeating = P / (2^L - 1), with P the period read as an integer.
  mpz_class block = 0;
  for (auto b : s.period) block = block * 2 + b;
  mpz_class denom = 1;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), s.period.size());
  denom -= 1;
  const Rational tail = Rational(mpq_class(block, denom)) * Rational::pow2(-static_cast<long>(s.pre.size()));
  return head + tail;
}

Rational partial_sum(const BitStream& s, Index length) {
  Rational sum;
  for (Index i = 1; i <= length; ++i) {
    if (s.bit(i)) sum += Rational::pow2(-static_cast<long>(i));
  }
  return sum;
}

bool unique_sums_check(unsigned k) {
  if (k > 20) throw Error(Errc::too_large, "unique_sums_check supports K <= 20, got " + std::to_string(k));
  // Sum over B of 2^-i, scaled by 2^K, is an exact integer.
  const std::uint64_t subsets = std::uint64_t{1} << k;
  std::vector<std::uint64_t> sums;
  sums.reserve(subsets);
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t s = 0;
    for (unsigned i = 1; i <= k; ++i) {
      if (mask & (std::uint64_t{1} << (i - 1))) s += std::uint64_t{1} << (k - i);
    }
    sums.push_back(s);
  }
  std::sort(sums.begin(), sums.end());
  return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

std::string to_string(const BitStream& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.pre.size(); ++i) os << (i ? "," : "") << int(s.pre[i]);
  os << '|';
  for (std::size_t i = 0; i < s.period.size(); ++i) os << (i ? "," : "") << int(s.period[i]);
  return os.str();
}

}  // namespace hmsrep
