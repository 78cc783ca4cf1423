#include "hmsrep/spin.hpp"

#include <algorithm>
#include <cmath>

#include "hmsrep/error.hpp"

namespace hmsrep {

namespace {

constexpr double kPvmNormTolerance = 1e-12;
constexpr double kPvmBasisTolerance = 1e-10;
constexpr double kRationalizeTolerance = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

BlochVector cross(const BlochVector& a, const BlochVector& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

std::complex<double> inner(const Amplitudes& a, const Amplitudes& b) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

BlochVector BlochVector::unit(double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw Error(Errc::invalid_argument, "Bloch vector has non-finite coordinates");
  }
  const double r = std::hypot(x, y, z);
  if (r == 0.0) throw Error(Errc::invalid_argument, "Bloch vector must be non-zero");
  return {x / r, y / r, z / r};
}

double BlochVector::norm() const noexcept { return std::hypot(x, y, z); }

SpinState SpinState::at_overlap(const BlochVector& u, const Rational& cos_theta) {
  if (cos_theta < Rational(-1) || cos_theta > Rational(1)) {
    throw Error(Errc::invalid_argument, "overlap " + cos_theta.str() + " outside [-1, 1]");
  }
  // Any unit w orthogonal to u: cross u with the axis it is least aligned to.
  const double ax = std::abs(u.x), ay = std::abs(u.y), az = std::abs(u.z);
  BlochVector axis{0.0, 0.0, 0.0};
  if (ax <= ay && ax <= az) {
    axis.x = 1.0;
  } else if (ay <= az) {
    axis.y = 1.0;
  } else {
    axis.z = 1.0;
  }
  const BlochVector w0 = cross(u, axis);
  const BlochVector w = BlochVector::unit(w0.x, w0.y, w0.z);
  const double c = cos_theta.to_double();
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  BlochVector v{c * u.x + s * w.x, c * u.y + s * w.y, c * u.z + s * w.z};
  if (c == 1.0) v = u;
  if (c == -1.0) v = -u;
  return SpinState{BlochVector::unit(v.x, v.y, v.z), cos_theta};
}

double born_probability(const BlochVector& u, const BlochVector& v) {
  return std::clamp((1.0 + u.dot(v)) / 2.0, 0.0, 1.0);
}

std::size_t aerts_outcome(const BlochVector& u, const BlochVector& v, double lambda) {
  if (!(lambda >= -1.0 && lambda <= 1.0)) throw Error(Errc::invalid_argument, "diameter coordinate outside [-1, 1]");
  return lambda <= u.dot(v) ? 0 : 1;
}

Hms aerts_hms(const BlochVector& u) {
  return Hms(ContinuousUnit{}, {kSpinUp, kSpinDown}, SphereDiameterRule{u});
}

std::size_t reduced_outcome(const BlochVector& u, const SpinState& v, Index lambda) {
  if (lambda < 1) throw Error(Errc::invalid_argument, "band index must be >= 1");
  const Index idx[1] = {lambda};
  return outcome_at_atom(reduced_hms(u), v, idx);
}

Hms reduced_hms(const BlochVector& u) {
  return Hms(CountableContext{CountableFamily::dyadic()}, {"o1", "o2"}, SphereBandRule{u});
}

BandLayout band_layout(Index lambda) {
  if (lambda < 1 || lambda > kMaxBandDepth) {
    throw Error(Errc::too_deep, "band depth must lie in [1, 20], got " + std::to_string(lambda));
  }
  BandLayout out;
  out.lambda = lambda;
  const std::uint64_t count = std::uint64_t{1} << lambda;
  const Rational width = Rational::pow2(-static_cast<long>(lambda));
  out.bands.reserve(count);
  for (std::uint64_t k = count; k-- > 0;) {
    Band b;
    b.lo = Rational(static_cast<long>(k)) * width;
    b.hi = b.lo + width;
    b.outcome = digit(b.lo, lambda) == 1 ? "o1" : "o2";
    b.theta_top = std::acos(std::clamp(2.0 * b.hi.to_double() - 1.0, -1.0, 1.0));
    b.theta_bottom = std::acos(std::clamp(2.0 * b.lo.to_double() - 1.0, -1.0, 1.0));
    out.bands.push_back(std::move(b));
  }
  return out;
}

bool within_four_sigma(double p, std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return false;
  if (p <= 0.0) return hits == 0;
  if (p >= 1.0) return hits == n;
  const double f = static_cast<double>(hits) / static_cast<double>(n);
  return std::abs(f - p) <= 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

bool EquivalenceReport::pass() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const EquivalenceRow& r) {
    return r.aerts_ok && r.reduced_ok && r.aerts_exact == r.reduced_exact;
  });
}

EquivalenceReport equivalence_report(const BlochVector& u, std::span<const SpinState> states, std::uint64_t n,
                                     std::uint64_t seed) {
  if (n < 1) throw Error(Errc::invalid_argument, "sample count must be >= 1");
  const Hms aerts = aerts_hms(u);
  const Hms reduced = reduced_hms(u);
  EquivalenceReport report;
  report.seed = seed;
  report.n = n;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const SpinState& s = states[i];
    EquivalenceRow row;
    row.state_id = i + 1;
    row.overlap = s.overlap ? s.overlap->to_double() : u.dot(s.v);
    row.overlap_exact = s.overlap;
    row.born = std::clamp((1.0 + row.overlap) / 2.0, 0.0, 1.0);

    const std::uint64_t state_seed = splitmix64(seed ^ splitmix64(i));
    const SampleReport a = sample(aerts, s, splitmix64(state_seed), n);
    const SampleReport r = sample(reduced, s, splitmix64(state_seed + 1), n);
    if (a.exact) row.aerts_exact = a.exact->probabilities[0];
    if (r.exact) row.reduced_exact = r.exact->probabilities[0];
    row.aerts_mc = static_cast<double>(a.counts[0]) / static_cast<double>(n);
    row.reduced_mc = static_cast<double>(r.counts[0]) / static_cast<double>(n);
    row.aerts_ok = within_four_sigma(row.aerts_exact ? row.aerts_exact->to_double() : row.born, a.counts[0], n);
    row.reduced_ok =
        within_four_sigma(row.reduced_exact ? row.reduced_exact->to_double() : row.born, r.counts[0], n);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Rational rationalize(double x, double tolerance) {
  if (!std::isfinite(x)) throw Error(Errc::invalid_argument, "cannot rationalize a non-finite value");
  const Rational exact = Rational::from_double(x);
  const Rational tol = Rational::from_double(tolerance);
  // Convergents h/k of the continued fraction of the exact value.
  mpz_class num = exact.numerator();
  mpz_class den = exact.denominator();
  mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h_next = a * h_prev + h;
    mpz_class k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    const Rational c(mpq_class(h_prev, k_prev));
    if (abs(c - exact) <= tol) return c;
    mpz_class r = num - a * den;
    num = den;
    den = r;
  }
  return exact;
}

FiniteMeasure pvm_measure(const Amplitudes& psi, const std::vector<Amplitudes>& basis) {
  const std::size_t d = psi.size();
  if (d == 0) throw Error(Errc::invalid_argument, "state needs at least one amplitude");
  double norm2 = 0.0;
  for (const auto& c : psi) norm2 += std::norm(c);
  if (!(std::abs(norm2 - 1.0) <= kPvmNormTolerance)) {
    throw Error(Errc::not_normalized, "state has squared norm " + std::to_string(norm2) + ", expected 1");
  }
  if (basis.size() != d) {
    throw Error(Errc::not_orthonormal, "basis has " + std::to_string(basis.size()) + " vectors in dimension " +
                                           std::to_string(d));
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (basis[i].size() != d) throw Error(Errc::not_orthonormal, "basis vector dimension mismatch");
    for (std::size_t j = i; j < d; ++j) {
      const std::complex<double> g = inner(basis[i], basis[j]);
      const double expected = i == j ? 1.0 : 0.0;
      if (!(std::abs(g - expected) <= kPvmBasisTolerance)) {
        throw Error(Errc::not_orthonormal, "basis vectors " + std::to_string(i + 1) + " and " +
                                               std::to_string(j + 1) + " are not orthonormal");
      }
    }
  }
  std::vector<Rational> weights;
  Rational total;
  for (const auto& b : basis) {
    const Rational w = rationalize(std::norm(inner(b, psi)), kRationalizeTolerance);
    if (w.is_zero()) continue;
    weights.push_back(w);
    total += w;
  }
  for (auto& w : weights) w = w / total;
  return make_finite(std::move(weights));
}

}  // namespace hmsrep
