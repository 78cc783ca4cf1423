#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hmsrep/bloch.hpp"
#include "hmsrep/dyadic.hpp"
#include "hmsrep/measures.hpp"
#include "hmsrep/rational.hpp"

namespace hmsrep {

// ---------------------------------------------------------------------------
// Context spaces

/// Uniform (Lebesgue) measure on [0, 1].
struct ContinuousUnit {
  friend bool operator==(const ContinuousUnit&, const ContinuousUnit&) = default;
};

struct CountableContext {
  CountableFamily family;
  friend bool operator==(const CountableContext&, const CountableContext&) = default;
};

using ContextSpace = std::variant<ContinuousUnit, CountableContext>;

std::string to_string(const ContextSpace& context);

// ---------------------------------------------------------------------------
// Measurement systems

/// Finitely many states, each with its own outcome distribution.
struct MeasurementSystem {
  std::vector<std::string> states;
  std::vector<FiniteMeasure> distributions;
};

/// One state per distribution (labels "s1", "s2", ...).
MeasurementSystem ms_from_classes(std::vector<FiniteMeasure> distributions);

/// The distinct measure classes realized by the system, in ClassOrder.
std::vector<FiniteMeasure> delta_classes(const MeasurementSystem& ms);

// ---------------------------------------------------------------------------
// Outcome rules

/// Conditional residual weights Q_i = m(i) / (1 - sum_{j<i} m(j)).
struct QSequence {
  std::vector<Rational> q;
  friend bool operator==(const QSequence&, const QSequence&) = default;
};

/// Context [0, 1]; per state, outcome j is taken on [cuts[j], cuts[j+1]).
struct ThresholdRule {
  std::vector<std::vector<Rational>> cuts;
};

/// Context N^(n-1) with product-geometric weights; per state, outcome j is
/// the first coordinate j whose greedy expansion of Q_j has bit i_j set,
/// else the last. Bits are computed on demand, since periods can be huge.
struct ProductBitsRule {
  std::vector<QSequence> q;
};

/// Aerts' sphere model: lambda uniform on the diameter [-u, u].
struct SphereDiameterRule {
  BlochVector u;
};

/// Band model: context N with weights 2^-lambda; at lambda the sphere is cut
/// into 2^lambda equal-area bands with alternating outcomes.
struct SphereBandRule {
  BlochVector u;
};

using OutcomeRule = std::variant<ThresholdRule, ProductBitsRule, SphereDiameterRule, SphereBandRule>;

/// A state is either an index into a finite state list, or a sphere point.
using State = std::variant<std::size_t, SpinState>;

/// Hidden measurement system: one context measure shared by every state, and
/// a deterministic outcome rule. The constructor rejects rules that do not
/// match the context.
class Hms {
 public:
  Hms(ContextSpace context, std::vector<std::string> outcomes, OutcomeRule rule);

  const ContextSpace& context() const noexcept { return context_; }
  std::span<const std::string> outcomes() const noexcept { return outcomes_; }
  const OutcomeRule& rule() const noexcept { return rule_; }
  /// Number of indexed states; 0 for sphere rules (any SpinState is valid).
  std::size_t state_count() const noexcept;
  /// Short rule identifier: "threshold", "product_bits", "aerts", "bands".
  std::string_view rule_kind() const noexcept;

 private:
  ContextSpace context_;
  std::vector<std::string> outcomes_;
  OutcomeRule rule_;
};

struct OutcomeDistribution {
  std::vector<std::string> outcomes;
  std::vector<Rational> probabilities;

  /// Throws InvalidArgument for an unknown label.
  const Rational& at(std::string_view label) const;
};

/// Throws InvalidArgument for n = 1.
QSequence q_recursion(const FiniteMeasure& m);

/// Checks m_i = Q_i * prod_{j<i}(1 - Q_j) for i < n and the remainder
/// identity m_n = prod_{i<n}(1 - Q_i). Throws InvalidArgument when
/// q.size() != n - 1.
bool product_formula_check(const FiniteMeasure& m, const QSequence& q);

Hms threshold_hms(const FiniteMeasure& m);
Hms threshold_hms(const MeasurementSystem& ms);

/// Countable representation over N^(n-1): greedy binary expansions of the
/// Q-sequence select the outcome. Throws InvalidArgument for n = 1.
Hms countable_hms_from_finite(const FiniteMeasure& m);
/// Shared ProductGeometric(n_max) context for every state; states with
/// fewer outcomes give probability 0 to the trailing labels.
Hms countable_hms(const MeasurementSystem& ms);

/// Outcome index at a point of the [0, 1] context. Sphere rules evaluate the
/// state's exact overlap when present, else its floating overlap.
std::size_t outcome_at_unit(const Hms& h, const State& state, const Rational& lambda);
/// Outcome index at an atom of a countable context.
std::size_t outcome_at_atom(const Hms& h, const State& state, std::span<const Index> lambda);

/// Exact outcome probabilities as context measures of the outcome sets.
/// Sphere rules throw IrrationalOverlap for a state without exact overlap.
OutcomeDistribution exact_probabilities(const Hms& h, const State& state);

/// Exact inverse-transform draws from context measures, driven by fair bits
/// from a seeded 64-bit Mersenne Twister.
class ContextSampler {
 public:
  explicit ContextSampler(std::uint64_t seed);

  /// k with probability 2^-k.
  Index geometric();
  /// Uniform on {0, ..., bound-1}.
  std::uint64_t below(std::uint64_t bound);
  /// k for the uniform grid point k / 2^53 of [0, 1).
  std::uint64_t unit_numerator();
  /// An atom of the family (length index_arity()).
  std::vector<Index> atom(const CountableFamily& family);

 private:
  std::mt19937_64 engine_;
};

struct SampleReport {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::vector<std::string> outcomes;
  std::vector<std::uint64_t> counts;
  std::optional<OutcomeDistribution> exact;
};

/// N independent context draws from a generator seeded with `seed`; fully
/// deterministic for a given (h, state, seed, n). Countable contexts are
/// drawn by exact inverse transform from fair random bits.
SampleReport sample(const Hms& h, const State& state, std::uint64_t seed, std::uint64_t n);

struct SigmaMorphismReport {
  std::vector<Rational> expected;       ///< source weights m(j)
  std::vector<Rational> exact;          ///< closed-form product-formula masses
  std::vector<Rational> partial;        ///< block masses over {1..K}^(n-1)
  Index depth = 0;
  Rational uncovered;                   ///< exact mass outside the truncation
  Rational tail_bound;                  ///< n * 2^-K
  bool exact_match = false;
  bool bracketed = false;
  bool disjoint_cover = false;
  std::uint64_t enumerated = 0;

  bool pass() const noexcept { return exact_match && bracketed && disjoint_cover; }
};

/// Checks the countable construction two ways: closed-form masses against
/// m (throws Mismatch on failure), and explicit enumeration of truncated
/// blocks bracketing each weight within the uncovered tail.
SigmaMorphismReport verify_sigma_morphism(const Hms& h, const FiniteMeasure& m, Index depth);

/// Fixed bijection N -> N^(n-1) by iterated Cantor pairing (1-based).
std::vector<Index> pairing(std::uint64_t n, Index i);
/// Inverse of pairing for a multi-index of length n-1.
Index unpairing(std::span<const Index> multi_index);

}  // namespace hmsrep
