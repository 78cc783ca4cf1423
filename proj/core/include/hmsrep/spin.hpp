#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hmsrep/bloch.hpp"
#include "hmsrep/hms.hpp"
#include "hmsrep/measures.hpp"
#include "hmsrep/rational.hpp"

namespace hmsrep {

inline constexpr const char* kSpinUp = "p_u";
inline constexpr const char* kSpinDown = "p_-u";

/// (1 + u.v) / 2.
double born_probability(const BlochVector& u, const BlochVector& v);

/// Outcome index for the diameter coordinate lambda in [-1, 1]: 0 (p_u) iff
/// lambda <= u.v, else 1.
std::size_t aerts_outcome(const BlochVector& u, const BlochVector& v, double lambda);

/// Continuous model: [0, 1] context identified with the diameter by
/// lambda = 2t - 1. Outcomes p_u, p_-u.
Hms aerts_hms(const BlochVector& u);

/// Band model outcome at lambda >= 1: 0 (o1) iff digit(a, lambda) = 1 with
/// a = (1 + u.v) / 2. Uses the exact overlap when the state carries one.
std::size_t reduced_outcome(const BlochVector& u, const SpinState& v, Index lambda);

/// Band model over the dyadic context. Outcomes o1, o2.
Hms reduced_hms(const BlochVector& u);

struct Band {
  Rational lo;  ///< a-coordinate, half-open [lo, hi)
  Rational hi;
  std::string outcome;
  double theta_top = 0.0;     ///< polar angle arccos(2 hi - 1)
  double theta_bottom = 0.0;  ///< polar angle arccos(2 lo - 1)
};

struct BandLayout {
  Index lambda = 0;
  std::vector<Band> bands;  ///< from the top (a near 1) down
};

inline constexpr Index kMaxBandDepth = 20;

/// Throws TooDeep unless 1 <= lambda <= 20.
BandLayout band_layout(Index lambda);

struct EquivalenceRow {
  std::size_t state_id = 0;
  double overlap = 0.0;
  std::optional<Rational> overlap_exact;
  double born = 0.0;
  std::optional<Rational> aerts_exact;
  std::optional<Rational> reduced_exact;
  double aerts_mc = 0.0;  ///< frequency of the first outcome
  double reduced_mc = 0.0;
  bool aerts_ok = false;
  bool reduced_ok = false;
};

struct EquivalenceReport {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::vector<EquivalenceRow> rows;

  bool pass() const noexcept;
};

/// Runs both models on every state with n samples each. Each run has its own
/// seed derived from (seed, state, model). A frequency passes when it lies
/// within 4 sigma of the exact probability (Born when no exact value).
EquivalenceReport equivalence_report(const BlochVector& u, std::span<const SpinState> states, std::uint64_t n,
                                     std::uint64_t seed);

/// True when |f - p| <= 4 sqrt(p (1 - p) / n); for p in {0, 1} f must equal p.
bool within_four_sigma(double p, std::uint64_t hits, std::uint64_t n);

using Amplitudes = std::vector<std::complex<double>>;

/// Closest convergent of the continued fraction of the exact value of x with
/// |x - p/q| <= tolerance.
Rational rationalize(double x, double tolerance);

/// Outcome weights |<b_i, psi>|^2, rationalized within 1e-12, renormalized
/// exactly and sorted. Zero weights are dropped. Throws NotNormalized when
/// |psi| differs from 1 by more than 1e-12 and NotOrthonormal when the basis
/// is not orthonormal and complete within 1e-10.
FiniteMeasure pvm_measure(const Amplitudes& psi, const std::vector<Amplitudes>& basis);

}  // namespace hmsrep
