#include "hmsrep/order.hpp"

#include <algorithm>
#include <map>

#include "hmsrep/error.hpp"
#include "hmsrep/hms.hpp"

namespace hmsrep {

namespace {

class PartitionSearch {
 public:
  PartitionSearch(const FiniteMeasure& source, const FiniteMeasure& target)
      : source_(source.weights().begin(), source.weights().end()),
        target_(target.weights().begin(), target.weights().end()),
        deficit_(source_),
        assignment_(target_.size(), 0) {}

  bool run() {
    if (target_.size() < source_.size()) return false;
    return assign(0);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }

 private:
  // Every open block must still be fillable by the atoms that remain.
  bool feasible(std::size_t next) const {
    const std::size_t remaining = target_.size() - next;
    std::size_t open = 0;
    for (const auto& d : deficit_) {
      if (d.is_zero()) continue;
      ++open;
      if (remaining == 0 || d < target_.back()) return false;
    }
    return open <= remaining;
  }

  bool assign(std::size_t atom) {
    ++nodes_;
    if (atom == target_.size()) return true;
    const Rational& w = target_[atom];
    for (std::size_t k = 0; k < deficit_.size(); ++k) {
      if (deficit_[k] < w) continue;
      // Blocks with equal weight and equal deficit are interchangeable;
      // only the first of them is tried.
      bool duplicate = false;
      for (std::size_t j = 0; j < k && !duplicate; ++j) {
        duplicate = source_[j] == source_[k] && deficit_[j] == deficit_[k];
      }
      if (duplicate) continue;
      deficit_[k] -= w;
      assignment_[atom] = k;
      if (feasible(atom + 1) && assign(atom + 1)) return true;
      deficit_[k] += w;
    }
    return false;
  }

  std::vector<Rational> source_;
  std::vector<Rational> target_;
  std::vector<Rational> deficit_;
  std::vector<std::size_t> assignment_;
  std::uint64_t nodes_ = 0;
};

void collect_coarsenings(const FiniteMeasure& m, std::size_t atom, std::vector<Rational>& sums,
                         std::set<FiniteMeasure, ClassOrder>& out) {
  if (atom == m.size()) {
    out.insert(make_finite(sums));
    return;
  }
  for (std::size_t b = 0; b < sums.size(); ++b) {
    sums[b] += m[atom];
    collect_coarsenings(m, atom + 1, sums, out);
    sums[b] -= m[atom];
  }
  sums.push_back(m[atom]);
  collect_coarsenings(m, atom + 1, sums, out);
  sums.pop_back();
}

}  // namespace

std::optional<BlockPartition> leq_finite(const FiniteMeasure& source, const FiniteMeasure& target) {
  PartitionSearch search(source, target);
  if (!search.run()) return std::nullopt;
  BlockPartition p{source, target, std::vector<std::vector<std::size_t>>(source.size())};
  for (std::size_t atom = 0; atom < target.size(); ++atom) p.blocks[search.assignment()[atom]].push_back(atom + 1);
  return p;
}

bool is_valid_partition(const BlockPartition& p) {
  if (p.blocks.size() != p.source.size()) return false;
  std::vector<int> seen(p.target.size() + 1, 0);
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    if (p.blocks[k].empty()) return false;
    Rational mass;
    for (std::size_t atom : p.blocks[k]) {
      if (atom == 0 || atom > p.target.size() || seen[atom]++) return false;
      mass += p.target[atom - 1];
    }
    if (mass != p.source[k]) return false;
  }
  return std::count(seen.begin() + 1, seen.end(), 1) == static_cast<std::ptrdiff_t>(p.target.size());
}

BlockPartition compose(const BlockPartition& lower, const BlockPartition& upper) {
  if (!(lower.target == upper.source)) {
    throw Error(Errc::invalid_argument, "cannot compose: middle measures differ");
  }
  BlockPartition out{lower.source, upper.target, {}};
  for (const auto& block : lower.blocks) {
    std::vector<std::size_t> merged;
    for (std::size_t mid : block) {
      const auto& inner = upper.blocks[mid - 1];
      merged.insert(merged.end(), inner.begin(), inner.end());
    }
    std::sort(merged.begin(), merged.end());
    out.blocks.push_back(std::move(merged));
  }
  return out;
}

std::vector<FiniteMeasure> coarsenings(const FiniteMeasure& m) {
  if (m.size() > kMaxCoarseningAtoms) {
    throw Error(Errc::too_large, "coarsening enumeration supports at most 12 atoms, got " + std::to_string(m.size()));
  }
  std::set<FiniteMeasure, ClassOrder> out;
  std::vector<Rational> sums;
  collect_coarsenings(m, 0, sums, out);
  return {out.begin(), out.end()};
}

std::optional<LeqFailure> explain_leq_failure(const FiniteMeasure& source, const FiniteMeasure& target) {
  PartitionSearch search(source, target);
  if (search.run()) return std::nullopt;
  LeqFailure f{source, target, std::nullopt, search.nodes()};
  if (target.size() <= 16) {
    std::set<Rational> subset_sums{Rational(0)};
    for (const auto& w : target.weights()) {
      std::set<Rational> next = subset_sums;
      for (const auto& s : subset_sums) next.insert(s + w);
      subset_sums = std::move(next);
    }
    for (const auto& w : source.weights()) {
      if (!subset_sums.contains(w)) {
        f.unrealizable_weight = w;
        break;
      }
    }
  }
  return f;
}

NoLubCertificate verify_no_least_upper_bound(const std::vector<FiniteMeasure>& family,
                                             const FiniteMeasure& ub1, const FiniteMeasure& ub2) {
  if (family.empty()) throw Error(Errc::invalid_argument, "family must be non-empty");
  for (const auto* ub : {&ub1, &ub2}) {
    if (ub->size() > kMaxCoarseningAtoms) throw Error(Errc::too_large, "upper bound exceeds the 12-atom guard");
  }

  std::vector<BlockPartition> w1;
  std::vector<BlockPartition> w2;
  for (const auto& member : family) {
    auto p1 = leq_finite(member, ub1);
    if (!p1) throw Error(Errc::not_upper_bound, "ub1 " + to_string(ub1) + " does not dominate " + to_string(member));
    auto p2 = leq_finite(member, ub2);
    if (!p2) throw Error(Errc::not_upper_bound, "ub2 " + to_string(ub2) + " does not dominate " + to_string(member));
    w1.push_back(std::move(*p1));
    w2.push_back(std::move(*p2));
  }

  auto f12 = explain_leq_failure(ub1, ub2);
  if (!f12) throw Error(Errc::comparable, "ub1 <= ub2: the bounds are comparable");
  auto f21 = explain_leq_failure(ub2, ub1);
  if (!f21) throw Error(Errc::comparable, "ub2 <= ub1: the bounds are comparable");

  // A least upper bound would be <= both bounds, hence a common coarsening.
  const auto c1 = coarsenings(ub1);
  const auto c2 = coarsenings(ub2);
  std::vector<FiniteMeasure> common;
  std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(common), ClassOrder{});

  std::vector<DominanceFailure> failures;
  for (const auto& c : common) {
    auto undominated = std::find_if(family.begin(), family.end(),
                                    [&](const FiniteMeasure& member) { return !leq_finite(member, c); });
    if (undominated == family.end()) {
      throw Error(Errc::lub_exists, "common coarsening " + to_string(c) + " dominates the whole family");
    }
    failures.push_back({c, *undominated});
  }

  return NoLubCertificate{family, ub1, ub2, std::move(w1), std::move(w2), std::move(*f12), std::move(*f21),
                          std::move(common), std::move(failures)};
}

ContinuumEmbedding embed_in_continuum(const FiniteMeasure& m) {
  ContinuumEmbedding out;
  Rational lo;
  for (const auto& w : m.weights()) {
    out.intervals.push_back({lo, lo + w});
    lo += w;
  }
  out.uncovered = Rational(1) - lo;
  return out;
}

ContinuumEmbedding embed_in_continuum(const CountableFamily& family, Index depth) {
  ContinuumEmbedding out;
  Rational lo;
  for (Index i = 1; i <= depth; ++i) {
    const Rational w = family.kind() == CountableFamily::Kind::product_geometric
                           ? atom(family, pairing(family.parameter(), i))
                           : atom(family, i);
    out.intervals.push_back({lo, lo + w});
    lo += w;
  }
  out.uncovered = Rational(1) - lo;
  return out;
}

UniformObstruction atom_obstruction_uniform(const Rational& a) {
  if (a.sign() <= 0 || a >= Rational(1)) throw Error(Errc::invalid_argument, "atom mass must lie in (0, 1)");
  const mpz_class n = (Rational(1) / a).floor() + 1;
  if (!n.fits_slong_p() || n > 1'000'000) throw Error(Errc::too_large, "uniform obstruction needs too many atoms");
  const long atoms = n.get_si();
  std::vector<Rational> w(static_cast<std::size_t>(atoms), Rational(1, atoms));
  const bool gap = Rational(1, atoms) < a;
  return UniformObstruction{a, static_cast<std::uint64_t>(atoms), make_finite(std::move(w)), gap};
}

PigeonholeWitness countable_incomparability_check(const CountableFamily& a, const CountableFamily& b) {
  const auto is = [](const CountableFamily& f, CountableFamily::Kind k) { return f.kind() == k; };
  const bool supported = (is(a, CountableFamily::Kind::dyadic) && is(b, CountableFamily::Kind::ternary_split)) ||
                         (is(a, CountableFamily::Kind::ternary_split) && is(b, CountableFamily::Kind::dyadic));
  if (!supported) {
    throw Error(Errc::unsupported, "incomparability witness covers only (Dyadic, TernarySplit), got (" + a.str() +
                                       ", " + b.str() + ")");
  }
  const CountableFamily source = CountableFamily::dyadic();
  const CountableFamily target = CountableFamily::ternary_split();

  PigeonholeWitness w{source, target, atom(target, 1), {}, {}, {}, {}, false, false};
  // Both families have non-increasing atom weights, so prefixes suffice.
  for (Index i = 1; atom(target, i) == w.threshold; ++i) w.heavy_target_atoms.push_back(i);
  for (Index i = 1; atom(source, i) >= w.threshold; ++i) w.source_weights_at_least_threshold.push_back(atom(source, i));
  w.max_source_weight = atom(source, 1);
  w.combined_heavy_mass = w.threshold * Rational(2);
  w.heavy_atoms_need_distinct_blocks = w.heavy_target_atoms.size() >= 2 && w.combined_heavy_mass > w.max_source_weight;
  w.contradiction = w.heavy_atoms_need_distinct_blocks &&
                    w.source_weights_at_least_threshold.size() < w.heavy_target_atoms.size();
  return w;
}

UniformDyadicWitness uniform_dyadic_witness(std::uint64_t n_uniform) {
  if (n_uniform < 2) throw Error(Errc::invalid_argument, "uniform_dyadic_witness needs N >= 2");
  const CountableFamily f = CountableFamily::uniform_dyadic(n_uniform);
  UniformDyadicWitness w{f, Rational(0), Rational(0), false};
  for (Index i = 1; i < n_uniform; ++i) w.uniform_part += atom(f, i);
  // w(N), w(N+1), ... halves at each step: the sum is 2 w(N).
  w.halving_part = atom(f, n_uniform) * Rational(2);
  w.normalized = w.uniform_part + w.halving_part == Rational(1);
  return w;
}

}  // namespace hmsrep
