#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "hmsrep/dyadic.hpp"
#include "hmsrep/measures.hpp"
#include "hmsrep/rational.hpp"

namespace hmsrep {

// ---------------------------------------------------------------------------
// Finite order: source <= target iff the target's atoms can be grouped into
// blocks whose masses are exactly the source weights.

struct BlockPartition {
  FiniteMeasure source;
  FiniteMeasure target;
  /// blocks[k] holds the 1-based target atoms mapped to source weight k,
  /// ascending.
  std::vector<std::vector<std::size_t>> blocks;
};

/// Depth-first search over atom-to-block assignments, pruned by remaining
/// deficits. Returns the lexicographically least assignment (atom 1's block
/// first, then atom 2's, ...) or nullopt when source is not <= target.
std::optional<BlockPartition> leq_finite(const FiniteMeasure& source, const FiniteMeasure& target);

/// Checks the BlockPartition invariants: disjoint non-empty blocks covering
/// every target atom, one per source weight, with exact block sums.
bool is_valid_partition(const BlockPartition& p);

/// Witness for a <= c from witnesses a <= b and b <= c. Throws
/// InvalidArgument when lower.target != upper.source.
BlockPartition compose(const BlockPartition& lower, const BlockPartition& upper);

/// Every measure obtained by summing the blocks of a set partition of m's
/// atoms, deduplicated, in ClassOrder. Exactly the measures <= m.
/// Throws TooLarge for more than 12 atoms.
std::vector<FiniteMeasure> coarsenings(const FiniteMeasure& m);

inline constexpr std::size_t kMaxCoarseningAtoms = 12;

/// Evidence that source is not <= target.
struct LeqFailure {
  FiniteMeasure source;
  FiniteMeasure target;
  /// A source weight that is not the sum of any subset of target atoms, if
  /// one exists; otherwise only the exhaustive search rules it out.
  std::optional<Rational> unrealizable_weight;
  std::uint64_t search_nodes = 0;
};

/// Returns nullopt when source <= target holds.
std::optional<LeqFailure> explain_leq_failure(const FiniteMeasure& source, const FiniteMeasure& target);

struct DominanceFailure {
  FiniteMeasure coarsening;
  FiniteMeasure undominated;  ///< family member that is not <= coarsening
};

/// Certificate that the family has no least upper bound: two incomparable
/// upper bounds, and no common lower bound of both that still dominates the
/// whole family. Any least upper bound would have to be such a measure.
struct NoLubCertificate {
  std::vector<FiniteMeasure> family;
  FiniteMeasure ub1;
  FiniteMeasure ub2;
  std::vector<BlockPartition> ub1_witnesses;  ///< member_k <= ub1
  std::vector<BlockPartition> ub2_witnesses;  ///< member_k <= ub2
  LeqFailure ub1_not_below_ub2;
  LeqFailure ub2_not_below_ub1;
  std::vector<FiniteMeasure> common_coarsenings;
  std::vector<DominanceFailure> dominance_failures;
};

/// Throws NotUpperBound, Comparable or LubExists naming the failed check,
/// and TooLarge when a bound exceeds the coarsening guard.
NoLubCertificate verify_no_least_upper_bound(const std::vector<FiniteMeasure>& family,
                                             const FiniteMeasure& ub1, const FiniteMeasure& ub2);

// ---------------------------------------------------------------------------
// Embeddings into the continuum

struct Interval {
  Rational lo;
  Rational hi;  ///< half-open [lo, hi)
};

struct ContinuumEmbedding {
  std::vector<Interval> intervals;
  Rational uncovered;  ///< mass not reached by the listed atoms
};

/// Consecutive subintervals of [0, 1) with lengths equal to the weights.
ContinuumEmbedding embed_in_continuum(const FiniteMeasure& m);
/// The first `depth` atoms of the family (multi-index families follow the
/// pairing order) laid out consecutively.
ContinuumEmbedding embed_in_continuum(const CountableFamily& family, Index depth);

// ---------------------------------------------------------------------------
// Finite measures below countable families

struct AllFrom {
  Index start;
  friend bool operator==(const AllFrom&, const AllFrom&) = default;
};

/// Atoms first_atom + k - 1 for every k with bits.bit(k) = 1. `value` is
/// resum(bits). The stream is purely periodic after normalization.
struct BitRule {
  Rational value;
  BitStream bits;
  Index first_atom;
  friend bool operator==(const BitRule&, const BitRule&) = default;
};

using BlockTail = std::variant<std::monostate, AllFrom, BitRule>;

/// A finitely described subset of N: explicit atoms below the tail start,
/// plus a rule covering the rest.
struct CountableBlock {
  std::set<Index> atoms;
  BlockTail tail;

  bool contains(Index i) const;
  /// Builds the normal form from an eventually periodic indicator whose bit
  /// k marks atom first_atom + k - 1. The tail starts no earlier than
  /// `tail_floor`.
  static CountableBlock from_indicator(const BitStream& indicator, Index first_atom, Index tail_floor);

  friend bool operator==(const CountableBlock&, const CountableBlock&) = default;
};

/// Exact mass of the block under the family. Requires a one-dimensional
/// family; BitRule tails must start in the family's halving range.
Rational block_mass(const CountableFamily& family, const CountableBlock& block);

struct CountableBlockAssignment {
  FiniteMeasure source;
  CountableFamily family;
  std::vector<CountableBlock> blocks;  ///< blocks[k] has mass source[k]
};

/// Exact masses match the source, and every atom lies in exactly one block.
bool verify_assignment(const CountableBlockAssignment& assignment);

/// source <= family via an explicit block assignment. Supported: any source
/// against dyadic (binary expansion for two outcomes, exact periodic search
/// beyond), single-outcome sources against any one-dimensional family, and
/// two-outcome sources against ternary_split. Returns nullopt when the
/// search proves no assignment exists; throws Unsupported otherwise.
std::optional<CountableBlockAssignment> leq_finite_countable(const FiniteMeasure& source,
                                                             const CountableFamily& family);

/// Block of ternary_split atoms with mass a, for any a in [0, 1]: atoms
/// {}, {1} or {1, 2} by the split of 3a, then the terminating binary
/// expansion of the remainder on atoms 3, 4, ...
CountableBlock ternary_block(const Rational& a);

/// Exhaustive search for a partition of the dyadic atoms into blocks of the
/// given masses. Assignments are eventually periodic, so the search runs
/// over the finite graph of scaled deficits and stops at the first cycle.
/// Throws TooLarge when more than `state_limit` states are visited.
std::optional<std::vector<CountableBlock>> dyadic_partition_search(const FiniteMeasure& source,
                                                                   std::size_t state_limit = 1u << 20);

// ---------------------------------------------------------------------------
// Obstruction witnesses

/// Uniform measure on N atoms, N the smallest integer above 1/a. A block
/// containing an atom of mass a weighs at least a > 1/N, so this measure
/// does not embed into any space with such an atom.
struct UniformObstruction {
  Rational atom_mass;
  std::uint64_t atoms = 0;
  FiniteMeasure uniform;
  bool strict_gap = false;  ///< 1/N < a, checked exactly
};

/// Throws InvalidArgument unless 0 < a < 1.
UniformObstruction atom_obstruction_uniform(const Rational& a);

/// Pigeonhole argument for source not <= target between two countable
/// families: the heaviest target atoms each need their own block, but too
/// few source weights are large enough to host them.
struct PigeonholeWitness {
  CountableFamily source;
  CountableFamily target;
  Rational threshold;                     ///< mass of each heavy target atom
  std::vector<Index> heavy_target_atoms;
  Rational combined_heavy_mass;           ///< two heavy atoms in one block
  Rational max_source_weight;
  std::vector<Rational> source_weights_at_least_threshold;
  bool heavy_atoms_need_distinct_blocks = false;
  bool contradiction = false;
};

/// Supports the (dyadic, ternary_split) pair in either order; the witness
/// shows dyadic is not <= ternary_split. Throws Unsupported otherwise.
PigeonholeWitness countable_incomparability_check(const CountableFamily& a, const CountableFamily& b);

struct UniformDyadicWitness {
  CountableFamily family;
  Rational uniform_part;  ///< sum of the N-1 atoms of mass 1/N
  Rational halving_part;  ///< geometric tail sum
  bool normalized = false;
};

/// Throws InvalidArgument for N < 2.
UniformDyadicWitness uniform_dyadic_witness(std::uint64_t n_uniform);

}  // namespace hmsrep
