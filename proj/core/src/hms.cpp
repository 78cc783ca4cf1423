#include "hmsrep/hms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hmsrep/error.hpp"

namespace hmsrep {

namespace {

constexpr double kOverlapConsistency = 1e-9;

std::vector<std::string> numbered_outcomes(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= n; ++j) out.push_back("o" + std::to_string(j));
  return out;
}

std::vector<Rational> cumulative_cuts(const FiniteMeasure& m) {
  std::vector<Rational> cuts{Rational(0)};
  Rational acc;
  for (const auto& w : m.weights()) {
    acc += w;
    cuts.push_back(acc);
  }
  return cuts;
}

// Q-sequence of length `dims` for a state with m.size() <= dims + 1 outcomes.
// Shorter measures are padded: Q = 1 at their last outcome, 0 afterwards.
QSequence padded_q(const FiniteMeasure& m, std::size_t dims) {
  QSequence out;
  Rational residual(1);
  for (std::size_t i = 0; i < dims; ++i) {
    if (i + 1 < m.size()) {
      out.q.push_back(residual.is_zero() ? Rational(0) : m[i] / residual);
      residual -= m[i];
    } else if (i + 1 == m.size()) {
      out.q.push_back(residual.is_zero() ? Rational(0) : Rational(1));
      residual = Rational(0);
    } else {
      out.q.push_back(Rational(0));
    }
  }
  return out;
}

std::size_t index_state(const Hms& h, const State& state) {
  const auto* idx = std::get_if<std::size_t>(&state);
  if (idx == nullptr) throw Error(Errc::invalid_argument, "rule expects an indexed state");
  if (*idx >= h.state_count()) {
    throw Error(Errc::invalid_argument, "state index " + std::to_string(*idx) + " out of range");
  }
  return *idx;
}

const SpinState& spin_state(const State& state) {
  const auto* s = std::get_if<SpinState>(&state);
  if (s == nullptr) throw Error(Errc::invalid_argument, "sphere rule expects a SpinState");
  return *s;
}

void check_overlap(const BlochVector& u, const SpinState& s) {
  if (!s.overlap) return;
  if (std::abs(u.dot(s.v) - s.overlap->to_double()) > kOverlapConsistency) {
    throw Error(Errc::invalid_argument, "state overlap " + s.overlap->str() +
                                            " does not match its vector against this measurement");
  }
}

double float_a(const BlochVector& u, const SpinState& s) {
  return std::clamp((1.0 + u.dot(s.v)) / 2.0, 0.0, 1.0);
}

}  // namespace

std::string to_string(const ContextSpace& context) {
  if (std::holds_alternative<ContinuousUnit>(context)) return "ContinuousUnit";
  return "Countable(" + std::get<CountableContext>(context).family.str() + ")";
}

MeasurementSystem ms_from_classes(std::vector<FiniteMeasure> distributions) {
  if (distributions.empty()) throw Error(Errc::invalid_argument, "measurement system needs at least one state");
  MeasurementSystem ms;
  for (std::size_t i = 0; i < distributions.size(); ++i) ms.states.push_back("s" + std::to_string(i + 1));
  ms.distributions = std::move(distributions);
  return ms;
}

std::vector<FiniteMeasure> delta_classes(const MeasurementSystem& ms) {
  std::set<FiniteMeasure, ClassOrder> classes(ms.distributions.begin(), ms.distributions.end());
  return {classes.begin(), classes.end()};
}

Hms::Hms(ContextSpace context, std::vector<std::string> outcomes, OutcomeRule rule)
    : context_(std::move(context)), outcomes_(std::move(outcomes)), rule_(std::move(rule)) {
  if (outcomes_.empty()) throw Error(Errc::invalid_argument, "an h.m.s. needs at least one outcome");
  const auto* countable = std::get_if<CountableContext>(&context_);
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(Errc::invalid_argument, what);
  };
  if (const auto* r = std::get_if<ThresholdRule>(&rule_)) {
    require(countable == nullptr, "threshold rule needs the [0,1] context");
    for (const auto& cuts : r->cuts) {
      require(cuts.size() >= 2 && cuts.size() <= outcomes_.size() + 1, "threshold cut count");
      require(cuts.front().is_zero() && cuts.back() == Rational(1), "threshold cuts must span [0,1]");
      require(std::is_sorted(cuts.begin(), cuts.end()), "threshold cuts must be non-decreasing");
    }
  } else if (const auto* r = std::get_if<ProductBitsRule>(&rule_)) {
    require(countable != nullptr &&
                countable->family.kind() == CountableFamily::Kind::product_geometric &&
                countable->family.parameter() == outcomes_.size(),
            "product-bits rule needs ProductGeometric(n) with n outcomes");
    for (std::size_t s = 0; s < r->q.size(); ++s) {
      require(r->q[s].q.size() + 1 == outcomes_.size() ,
              "product-bits rule dimension");
    }
  } else if (std::holds_alternative<SphereDiameterRule>(rule_)) {
    require(countable == nullptr && outcomes_.size() == 2, "sphere diameter rule needs [0,1] and 2 outcomes");
  } else {
    require(countable != nullptr && countable->family.kind() == CountableFamily::Kind::dyadic &&
                outcomes_.size() == 2,
            "band rule needs the dyadic context and 2 outcomes");
  }
}

std::size_t Hms::state_count() const noexcept {
  if (const auto* r = std::get_if<ThresholdRule>(&rule_)) return r->cuts.size();
  if (const auto* r = std::get_if<ProductBitsRule>(&rule_)) return r->q.size();
  return 0;
}

std::string_view Hms::rule_kind() const noexcept {
  switch (rule_.index()) {
    case 0: return "threshold";
    case 1: return "product_bits";
    case 2: return "aerts";
    default: return "bands";
  }
}

const Rational& OutcomeDistribution::at(std::string_view label) const {
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] == label) return probabilities[i];
  }
  throw Error(Errc::invalid_argument, "unknown outcome '" + std::string(label) + "'");
}

QSequence q_recursion(const FiniteMeasure& m) {
  if (m.size() < 2) throw Error(Errc::invalid_argument, "Q-recursion needs at least two outcomes");
  return padded_q(m, m.size() - 1);
}

bool product_formula_check(const FiniteMeasure& m, const QSequence& q) {
  if (q.q.size() + 1 != m.size()) {
    throw Error(Errc::invalid_argument, "Q-sequence length must be n - 1");
  }
  Rational survival(1);  // prod_{j<i} (1 - Q_j)
  for (std::size_t i = 0; i < q.q.size(); ++i) {
    if (m[i] != q.q[i] * survival) return false;
    survival *= Rational(1) - q.q[i];
  }
  // Remainder identity: 1 - sum_{i<n} m_i = prod (1 - Q_i) = m_n.
  Rational remainder(1);
  for (std::size_t i = 0; i + 1 < m.size(); ++i) remainder -= m[i];
  return remainder == survival && m[m.size() - 1] == survival;
}

Hms threshold_hms(const FiniteMeasure& m) { return threshold_hms(ms_from_classes({m})); }

Hms threshold_hms(const MeasurementSystem& ms) {
  std::size_t n = 0;
  ThresholdRule rule;
  for (const auto& m : ms.distributions) {
    n = std::max(n, m.size());
    rule.cuts.push_back(cumulative_cuts(m));
  }
  return Hms(ContinuousUnit{}, numbered_outcomes(n), std::move(rule));
}

Hms countable_hms_from_finite(const FiniteMeasure& m) {
  if (m.size() < 2) throw Error(Errc::invalid_argument, "countable construction needs at least two outcomes");
  return countable_hms(ms_from_classes({m}));
}

Hms countable_hms(const MeasurementSystem& ms) {
  std::size_t n = 0;
  for (const auto& m : ms.distributions) n = std::max(n, m.size());
  if (n < 2) throw Error(Errc::invalid_argument, "countable construction needs at least two outcomes");
  ProductBitsRule rule;
  for (const auto& m : ms.distributions) {
    QSequence q = padded_q(m, n - 1);
    rule.q.push_back(std::move(q));
  }
  return Hms(CountableContext{CountableFamily::product_geometric(n)}, numbered_outcomes(n), std::move(rule));
}

std::size_t outcome_at_unit(const Hms& h, const State& state, const Rational& lambda) {
  if (lambda.sign() < 0 || lambda > Rational(1)) throw Error(Errc::invalid_argument, "context point outside [0,1]");
  if (const auto* r = std::get_if<ThresholdRule>(&h.rule())) {
    const auto& cuts = r->cuts[index_state(h, state)];
    std::size_t j = 0;
    while (j + 2 < cuts.size() && lambda >= cuts[j + 1]) ++j;
    return j;
  }
  if (const auto* r = std::get_if<SphereDiameterRule>(&h.rule())) {
    const SpinState& s = spin_state(state);
    check_overlap(r->u, s);
    const Rational coord = Rational(2) * lambda - Rational(1);
    if (s.overlap) return coord <= *s.overlap ? 0 : 1;
    return coord.to_double() <= r->u.dot(s.v) ? 0 : 1;
  }
  throw Error(Errc::invalid_argument, "rule does not use the [0,1] context");
}

std::size_t outcome_at_atom(const Hms& h, const State& state, std::span<const Index> lambda) {
  if (const auto* r = std::get_if<ProductBitsRule>(&h.rule())) {
    const auto& q = r->q[index_state(h, state)].q;
    if (lambda.size() != q.size()) throw Error(Errc::index_arity, "multi-index length must be n - 1");
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (lambda[j] == 0) throw Error(Errc::invalid_argument, "multi-index components are 1-based");
      if (greedy_digit(q[j], lambda[j])) return j;
    }
    return q.size();
  }
  if (const auto* r = std::get_if<SphereBandRule>(&h.rule())) {
    if (lambda.size() != 1) throw Error(Errc::index_arity, "band rule takes a scalar index");
    const SpinState& s = spin_state(state);
    check_overlap(r->u, s);
    const int d = s.overlap ? digit((Rational(1) + *s.overlap) / Rational(2), lambda[0])
                            : digit(float_a(r->u, s), lambda[0]);
    return d == 1 ? 0 : 1;
  }
  throw Error(Errc::invalid_argument, "rule does not use a countable context");
}

OutcomeDistribution exact_probabilities(const Hms& h, const State& state) {
  OutcomeDistribution out;
  out.outcomes.assign(h.outcomes().begin(), h.outcomes().end());
  out.probabilities.assign(out.outcomes.size(), Rational(0));

  if (const auto* r = std::get_if<ThresholdRule>(&h.rule())) {
    const auto& cuts = r->cuts[index_state(h, state)];
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) out.probabilities[j] = cuts[j + 1] - cuts[j];
    return out;
  }
  if (const auto* r = std::get_if<ProductBitsRule>(&h.rule())) {
    const auto& q = r->q[index_state(h, state)].q;
    Rational survival(1);
    for (std::size_t j = 0; j < q.size(); ++j) {
      out.probabilities[j] = q[j] * survival;
      survival *= Rational(1) - q[j];
    }
    out.probabilities.back() = survival;
    return out;
  }

  const BlochVector& u = std::holds_alternative<SphereDiameterRule>(h.rule())
                             ? std::get<SphereDiameterRule>(h.rule()).u
                             : std::get<SphereBandRule>(h.rule()).u;
  const SpinState& s = spin_state(state);
  check_overlap(u, s);
  if (!s.overlap) {
    throw Error(Errc::irrational_overlap, "exact evaluation needs a rational overlap u.v");
  }
  const Rational& c = *s.overlap;
  if (std::holds_alternative<SphereDiameterRule>(h.rule())) {
    // p_u is obtained for coordinates in [-1, c] of the diameter [-1, 1].
    out.probabilities[0] = (c - Rational(-1)) / Rational(2);
  } else {
    // Mass of {lambda : digit(a, lambda) = 1} under 2^-lambda.
    out.probabilities[0] = resum(expand_terminating((Rational(1) + c) / Rational(2)));
  }
  out.probabilities[1] = Rational(1) - out.probabilities[0];
  return out;
}

SigmaMorphismReport verify_sigma_morphism(const Hms& h, const FiniteMeasure& m, Index depth) {
  const auto* rule = std::get_if<ProductBitsRule>(&h.rule());
  if (rule == nullptr || h.state_count() != 1 || h.outcomes().size() != m.size()) {
    throw Error(Errc::invalid_argument, "verify_sigma_morphism needs the countable construction of m");
  }
  if (depth < 1 || depth > 64) throw Error(Errc::invalid_argument, "depth must lie in [1, 64]");
  const std::size_t n = m.size();
  const std::size_t dims = n - 1;

  SigmaMorphismReport report;
  report.depth = depth;
  report.expected.assign(m.weights().begin(), m.weights().end());
  report.exact = exact_probabilities(h, std::size_t{0}).probabilities;
  report.exact_match = report.exact == report.expected;
  if (!report.exact_match) throw Error(Errc::mismatch, "product-formula masses differ from the source measure");

  // Enumerate {1..K}^dims. Atom mass 2^-(sum i) is scaled by 2^(K*dims) to an
  // integer; each block is tested against its defining set, not against phi.
  const auto& q = rule->q[0].q;
  const unsigned long scale = static_cast<unsigned long>(depth * dims);
  std::vector<mpz_class> block(n, 0);
  std::vector<Index> idx(dims, 1);
  bool disjoint = true;
  std::uint64_t count = 0;
  while (true) {
    ++count;
    Index sum = 0;
    for (Index c : idx) sum += c;
    std::size_t members = 0;
    std::size_t owner = n;
    bool all_zero = true;
    for (std::size_t j = 0; j < dims; ++j) {
      const bool set = greedy_digit(q[j], idx[j]) != 0;
      if (set && all_zero) {
        ++members;
        owner = j;
      }
      all_zero = all_zero && !set;
    }
    if (all_zero) {
      ++members;
      owner = n - 1;
    }
    if (members != 1) {
      disjoint = false;
    } else {
      mpz_class w = 1;
      mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), scale - static_cast<unsigned long>(sum));
      block[owner] += w;
    }
    std::size_t k = 0;
    while (k < dims && idx[k] == depth) idx[k++] = 1;
    if (k == dims) break;
    ++idx[k];
  }
  report.enumerated = count;

  const Rational unit = Rational::pow2(-static_cast<long>(scale));
  Rational covered;
  for (const auto& b : block) {
    report.partial.push_back(Rational(mpq_class(b)) * unit);
    covered += report.partial.back();
  }
  // The enumerated set has mass (1 - 2^-K)^(n-1).
  Rational enumerated_mass(1);
  for (std::size_t j = 0; j < dims; ++j) enumerated_mass *= Rational(1) - Rational::pow2(-static_cast<long>(depth));
  report.uncovered = Rational(1) - enumerated_mass;
  report.tail_bound = Rational(static_cast<long>(n)) * Rational::pow2(-static_cast<long>(depth));
  report.disjoint_cover = disjoint && covered == enumerated_mass;

  bool bracketed = report.uncovered <= report.tail_bound;
  for (std::size_t j = 0; j < n; ++j) {
    bracketed = bracketed && report.partial[j] <= m[j] && m[j] <= report.partial[j] + report.uncovered;
  }
  report.bracketed = bracketed;
  return report;
}

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t isqrt(u128 v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (static_cast<u128>(r) * r > v) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Cantor pairing on 1-based coordinates.
std::pair<Index, Index> cantor_unpair(Index z) {
  const u128 z0 = z - 1;
  const std::uint64_t w = (isqrt(8 * z0 + 1) - 1) / 2;
  const u128 t = static_cast<u128>(w) * (w + 1) / 2;
  const auto y0 = static_cast<std::uint64_t>(z0 - t);
  const std::uint64_t x0 = w - y0;
  return {x0 + 1, y0 + 1};
}

Index cantor_pair(Index x, Index y) {
  const u128 s = static_cast<u128>(x - 1) + (y - 1);
  const u128 z = s * (s + 1) / 2 + (y - 1) + 1;
  if (z > static_cast<u128>(UINT64_MAX)) throw Error(Errc::too_large, "pairing overflow");
  return static_cast<Index>(z);
}

}  // namespace

std::vector<Index> pairing(std::uint64_t n, Index i) {
  if (n < 2) throw Error(Errc::invalid_argument, "pairing needs n >= 2");
  if (i == 0) throw Error(Errc::invalid_argument, "pairing indices are 1-based");
  std::vector<Index> out;
  Index rest = i;
  for (std::uint64_t d = n - 1; d > 1; --d) {
    auto [head, tail] = cantor_unpair(rest);
    out.push_back(head);
    rest = tail;
  }
  out.push_back(rest);
  return out;
}

Index unpairing(std::span<const Index> multi_index) {
  if (multi_index.empty()) throw Error(Errc::invalid_argument, "empty multi-index");
  for (Index c : multi_index) {
    if (c == 0) throw Error(Errc::invalid_argument, "pairing indices are 1-based");
  }
  Index acc = multi_index.back();
  for (std::size_t k = multi_index.size() - 1; k-- > 0;) acc = cantor_pair(multi_index[k], acc);
  return acc;
}

}  // namespace hmsrep
