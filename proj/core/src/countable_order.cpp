#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hmsrep/error.hpp"
#include "hmsrep/order.hpp"

namespace hmsrep {

namespace {

Index tail_start(const BlockTail& tail) {
  if (const auto* all = std::get_if<AllFrom>(&tail)) return all->start;
  if (const auto* rule = std::get_if<BitRule>(&tail)) return rule->first_atom;
  return 0;
}

// Indicator over ternary_split atoms 1, 2, 3, ... of the block with mass a.
BitStream ternary_indicator(const Rational& a) {
  if (a.sign() < 0 || a > Rational(1)) throw Error(Errc::invalid_argument, "block mass outside [0, 1]");
  std::uint8_t first = 0;
  std::uint8_t second = 0;
  Rational rest = a * Rational(3);
  if (a >= Rational(2, 3)) {
    first = second = 1;
    rest -= Rational(2);
  } else if (a >= Rational(1, 3)) {
    first = 1;
    rest -= Rational(1);
  }
  // Atom k + 2 has mass 2^-k / 3, so bit k of rest maps to atom k + 2.
  const BitStream bits = expand_terminating(rest);
  BitStream ind;
  ind.pre = {first, second};
  ind.pre.insert(ind.pre.end(), bits.pre.begin(), bits.pre.end());
  ind.period = bits.period;
  return canonicalize(std::move(ind));
}

std::vector<CountableBlock> blocks_from_indicator_pair(const BitStream& ind, Index tail_floor) {
  return {CountableBlock::from_indicator(ind, 1, tail_floor),
          CountableBlock::from_indicator(ind.complement(), 1, tail_floor)};
}

}  // namespace

bool CountableBlock::contains(Index i) const {
  if (atoms.contains(i)) return true;
  if (const auto* all = std::get_if<AllFrom>(&tail)) return i >= all->start;
  if (const auto* rule = std::get_if<BitRule>(&tail)) return i >= rule->first_atom && rule->bits.bit(i - rule->first_atom + 1);
  return false;
}

CountableBlock CountableBlock::from_indicator(const BitStream& indicator, Index first_atom, Index tail_floor) {
  const BitStream s = canonicalize(indicator);
  CountableBlock block;
  Index pos = first_atom;
  for (auto bit : s.pre) {
    if (bit) block.atoms.insert(pos);
    ++pos;
  }
  std::vector<std::uint8_t> period = s.period;
  while (pos < tail_floor) {
    if (period.front()) block.atoms.insert(pos);
    std::rotate(period.begin(), period.begin() + 1, period.end());
    ++pos;
  }
  if (period == std::vector<std::uint8_t>{1}) {
    block.tail = AllFrom{pos};
  } else if (std::any_of(period.begin(), period.end(), [](auto b) { return b != 0; })) {
    BitStream rule{{}, period};
    block.tail = BitRule{resum(rule), rule, pos};
  }
  return block;
}

Rational block_mass(const CountableFamily& family, const CountableBlock& block) {
  if (family.index_arity() != 1) throw Error(Errc::unsupported, "block masses need a one-dimensional family");
  const Index start = tail_start(block.tail);
  Rational mass;
  for (Index i : block.atoms) {
    if (start != 0 && i >= start) throw Error(Errc::invalid_argument, "explicit atom overlaps the block tail");
    mass += atom(family, i);
  }
  if (const auto* all = std::get_if<AllFrom>(&block.tail)) {
    mass += tail_mass(family, all->start - 1);
  } else if (const auto* rule = std::get_if<BitRule>(&block.tail)) {
    const auto halving = halving_start(family);
    if (!halving || rule->first_atom < *halving) {
      throw Error(Errc::invalid_argument, "bit rule starts before the family's halving range");
    }
    // Atoms first, first+1, ... weigh w(first) * 2^-(k-1) for bit k, so the
    // tail is 2 w(first) times the value of the bit stream.
    mass += Rational(2) * atom(family, rule->first_atom) * resum(rule->bits);
  }
  return mass;
}

bool verify_assignment(const CountableBlockAssignment& assignment) {
  if (assignment.blocks.size() != assignment.source.size()) return false;
  Index horizon = 1;
  std::size_t period = 1;
  for (std::size_t k = 0; k < assignment.blocks.size(); ++k) {
    const auto& block = assignment.blocks[k];
    if (block_mass(assignment.family, block) != assignment.source[k]) return false;
    if (!block.atoms.empty()) horizon = std::max(horizon, *block.atoms.rbegin() + 1);
    horizon = std::max(horizon, tail_start(block.tail));
    if (const auto* rule = std::get_if<BitRule>(&block.tail)) {
      horizon = std::max(horizon, rule->first_atom + rule->bits.pre.size());
      period = std::lcm(period, rule->bits.period.size());
    }
  }
  // Past the horizon membership repeats with the common period, so one full
  // period window settles disjointness and coverage everywhere.
  for (Index i = 1; i < horizon + period; ++i) {
    const auto owners = std::count_if(assignment.blocks.begin(), assignment.blocks.end(),
                                      [i](const CountableBlock& b) { return b.contains(i); });
    if (owners != 1) return false;
  }
  return true;
}

CountableBlock ternary_block(const Rational& a) {
  return CountableBlock::from_indicator(ternary_indicator(a), 1, *halving_start(CountableFamily::ternary_split()));
}

std::optional<std::vector<CountableBlock>> dyadic_partition_search(const FiniteMeasure& source,
                                                                   std::size_t state_limit) {
  using DeficitState = std::vector<Rational>;
  // Before atom i each entry is the block's remaining deficit times 2^i, so
  // atom i always has scaled mass 1 and the entries sum to 2.
  DeficitState start;
  for (const auto& w : source.weights()) start.push_back(w * Rational(2));

  struct Frame {
    DeficitState state;
    std::size_t next_block = 0;
  };
  std::map<DeficitState, std::size_t> on_path;  // state -> stack depth
  std::set<DeficitState> exhausted;
  std::vector<Frame> stack{{start, 0}};
  std::vector<std::size_t> path;  // path[i] = block of atom i + 1
  on_path.emplace(start, 0);
  std::size_t visited = 1;

  while (!stack.empty()) {
    Frame& frame = stack.back();
    const DeficitState& s = frame.state;
    std::size_t k = frame.next_block;
    for (; k < s.size(); ++k) {
      if (s[k] < Rational(1)) continue;
      // Blocks with equal scaled deficits have identical futures.
      if (std::find(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), s[k]) != s.begin() + static_cast<std::ptrdiff_t>(k)) continue;
      break;
    }
    if (k == s.size()) {
      on_path.erase(s);
      exhausted.insert(s);
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    frame.next_block = k + 1;
    DeficitState child = s;
    child[k] -= Rational(1);
    for (auto& d : child) d *= Rational(2);
    path.push_back(k);

    if (auto it = on_path.find(child); it != on_path.end()) {
      const std::size_t cycle_start = it->second;
      std::vector<CountableBlock> blocks;
      for (std::size_t j = 0; j < source.size(); ++j) {
        BitStream ind;
        ind.pre.clear();
        ind.period.clear();
        for (std::size_t i = 0; i < path.size(); ++i) {
          (i < cycle_start ? ind.pre : ind.period).push_back(path[i] == j ? 1 : 0);
        }
        blocks.push_back(CountableBlock::from_indicator(ind, 1, 1));
      }
      return blocks;
    }
    if (exhausted.contains(child)) {
      path.pop_back();
      continue;
    }
    if (++visited > state_limit) {
      throw Error(Errc::too_large, "dyadic partition search exceeded " + std::to_string(state_limit) + " states");
    }
    on_path.emplace(child, stack.size());
    stack.push_back({std::move(child), 0});
  }
  return std::nullopt;
}

std::optional<CountableBlockAssignment> leq_finite_countable(const FiniteMeasure& source,
                                                             const CountableFamily& family) {
  using Kind = CountableFamily::Kind;
  if (family.kind() == Kind::product_geometric) {
    throw Error(Errc::unsupported, "block assignments into " + family.str() + " are not supported");
  }
  CountableBlockAssignment out{source, family, {}};
  if (source.size() == 1) {
    out.blocks.push_back(CountableBlock{{}, AllFrom{1}});
  } else if (family.kind() == Kind::dyadic && source.size() == 2) {
    out.blocks = blocks_from_indicator_pair(expand_terminating(source[0]), 1);
  } else if (family.kind() == Kind::dyadic) {
    auto blocks = dyadic_partition_search(source);
    if (!blocks) return std::nullopt;
    out.blocks = std::move(*blocks);
  } else if (family.kind() == Kind::ternary_split && source.size() == 2) {
    out.blocks = blocks_from_indicator_pair(ternary_indicator(source[0]), *halving_start(family));
  } else {
    throw Error(Errc::unsupported, "no block construction for " + std::to_string(source.size()) +
                                       " outcomes into " + family.str());
  }
  if (!verify_assignment(out)) throw Error(Errc::mismatch, "constructed block assignment failed verification");
  return out;
}

}  // namespace hmsrep
