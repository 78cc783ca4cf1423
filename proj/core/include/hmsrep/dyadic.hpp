#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmsrep/measures.hpp"
#include "hmsrep/rational.hpp"

namespace hmsrep {

/// Eventually periodic binary expansion 0.b1 b2 b3 ... of a rational in
/// [0, 1]: the bits of `pre`, followed by `period` repeated forever.
/// Terminating expansions have period {0}; `period` is never empty.
struct BitStream {
  std::vector<std::uint8_t> pre;
  std::vector<std::uint8_t> period{0};

  /// Bit at 1-based position i.
  std::uint8_t bit(Index i) const;
  /// The stream with every bit flipped; resums to 1 - resum(*this).
  BitStream complement() const;

  friend bool operator==(const BitStream&, const BitStream&) = default;
};

/// Shortest equivalent (pre, period) pair.
BitStream canonicalize(BitStream stream);

/// Expansion built with the strict rule: bit i is 1 iff the remainder
/// exceeds 2^-i. Dyadic inputs end in trailing ones (3/4 -> 1,0,1,1,...).
BitStream expand_greedy(const Rational& a);

/// Expansion built with the non-strict rule: bit i is 1 iff the remainder
/// is at least 2^-i. Equals floor(a * 2^i) mod 2 for a < 1; a = 1 yields
/// all ones.
BitStream expand_terminating(const Rational& a);

/// Display cap for listing expansions in reports.
inline constexpr std::size_t kMaxListedBits = 4096;

/// expand_greedy(a) when its pre-period plus period has at most max_length
/// bits, else nullopt.
std::optional<BitStream> expand_greedy_bounded(const Rational& a, std::size_t max_length);

/// Bit `lambda` (>= 1) of expand_greedy(a), without building the stream.
int greedy_digit(const Rational& a, Index lambda);

/// Number of distinct binary expansions of a: 2 for dyadic a in (0, 1),
/// otherwise 1.
int count_expansions(const Rational& a);

/// Bit `lambda` (>= 1) of expand_terminating(a). a = 1 gives 1 everywhere.
int digit(const Rational& a, Index lambda);
/// Same convention for a floating value in [0, 1]; exact on the double.
int digit(double a, Index lambda);

/// Exact value of the stream: finite prefix plus geometric period sum.
Rational resum(const BitStream& stream);

/// Sum of b_i / 2^i over i <= length.
Rational partial_sum(const BitStream& stream, Index length);

/// True iff all 2^K subsets of {1..K} have distinct sums of 2^-i.
/// Throws TooLarge for K > 20.
bool unique_sums_check(unsigned k);

/// "1,0|1" (preperiod | period).
std::string to_string(const BitStream& stream);

}  // namespace hmsrep
