#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hmsrep/rational.hpp"

namespace hmsrep {

/// 1-based atom index into a countable family.
using Index = std::uint64_t;

/// A probability measure on a finite set of atoms, in normal form: weights
/// strictly positive, sorted descending, summing exactly to 1.
class FiniteMeasure {
 public:
  std::span<const Rational> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  /// 0-based access.
  const Rational& operator[](std::size_t i) const { return weights_[i]; }

  friend bool operator==(const FiniteMeasure&, const FiniteMeasure&) = default;

 private:
  friend FiniteMeasure make_finite(std::vector<Rational> raw_weights);
  explicit FiniteMeasure(std::vector<Rational> w) : weights_(std::move(w)) {}

  std::vector<Rational> weights_;
};

/// Sorts into normal form. Throws NonPositiveWeight or NotNormalized.
FiniteMeasure make_finite(std::vector<Rational> raw_weights);

/// Parses a comma-separated weight list ("2/3,1/3") and normalizes it.
/// Parse failures carry the offset within the whole list.
FiniteMeasure parse_weights(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text);

/// "(2/3, 1/3)"
std::string to_string(const FiniteMeasure& m);

/// Orders classes by atom count, then by weight vector descending. This is
/// the listing order used for coarsening sets and certificates.
struct ClassOrder {
  bool operator()(const FiniteMeasure& a, const FiniteMeasure& b) const;
};

/// Closed-form countable atom-weight families.
///
///   dyadic               w(i) = 2^-i
///   uniform_dyadic(N)    w(i) = 1/N for i < N, 2^(N-i-1)/N for i >= N
///   ternary_split        w(1) = w(2) = 1/3, w(i) = 1/(3 * 2^(i-2)) for i >= 3
///   product_geometric(n) w(i_1..i_{n-1}) = prod_j 2^-i_j on N^(n-1)
class CountableFamily {
 public:
  enum class Kind { dyadic, uniform_dyadic, ternary_split, product_geometric };

  static CountableFamily dyadic() { return CountableFamily(Kind::dyadic, 0); }
  static CountableFamily uniform_dyadic(std::uint64_t n_uniform);
  static CountableFamily ternary_split() { return CountableFamily(Kind::ternary_split, 0); }
  static CountableFamily product_geometric(std::uint64_t outcomes);

  /// Accepts the names produced by name(); `parameter` is N or n.
  static CountableFamily from_name(std::string_view name, std::uint64_t parameter = 0);

  Kind kind() const noexcept { return kind_; }
  /// N for uniform_dyadic, n for product_geometric, 0 otherwise.
  std::uint64_t parameter() const noexcept { return parameter_; }
  /// Length of a valid index: n-1 for product_geometric, 1 otherwise.
  std::size_t index_arity() const noexcept;

  /// Snake-case identifier used in JSON ("ternary_split").
  std::string_view name() const noexcept;
  /// Display form ("UniformDyadic(4)").
  std::string str() const;

  friend bool operator==(const CountableFamily&, const CountableFamily&) = default;

 private:
  CountableFamily(Kind k, std::uint64_t p) : kind_(k), parameter_(p) {}

  Kind kind_;
  std::uint64_t parameter_;
};

/// Exact atom weight. Throws IndexArity when the index length does not
/// match the family, InvalidArgument on a zero component.
Rational atom(const CountableFamily& family, std::span<const Index> index);
Rational atom(const CountableFamily& family, Index index);

/// Exact mass of all atoms whose every index component exceeds `depth`.
Rational tail_mass(const CountableFamily& family, Index depth);

/// Smallest index s with w(i+1) = w(i)/2 for every i >= s; nullopt for
/// multi-index families.
std::optional<Index> halving_start(const CountableFamily& family);

struct FiniteClass {
  std::size_t n;
  friend bool operator==(const FiniteClass&, const FiniteClass&) = default;
};
struct CountableClass {
  friend bool operator==(const CountableClass&, const CountableClass&) = default;
};
struct ContinuousClass {
  friend bool operator==(const ContinuousClass&, const ContinuousClass&) = default;
};
/// Lebesgue continuum plus a single atom of mass 0 < a < 1. Classification
/// only: no order operation accepts it.
struct ContinuousWithAtomClass {
  Rational a;
  friend bool operator==(const ContinuousWithAtomClass&, const ContinuousWithAtomClass&) = default;
};

using MeasureClass =
    std::variant<FiniteClass, CountableClass, ContinuousClass, ContinuousWithAtomClass>;

/// Tags for the uncountable spaces that appear only as classification input.
struct ContinuousSpace {};
struct ContinuousWithAtom {
  Rational atom_mass;
};

using MeasureDescription =
    std::variant<FiniteMeasure, CountableFamily, ContinuousSpace, ContinuousWithAtom>;

/// Throws InvalidArgument for an atom mass outside (0, 1).
MeasureClass classify(const MeasureDescription& description);

std::string to_string(const MeasureClass& cls);

}  // namespace hmsrep
