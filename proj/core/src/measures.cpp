#include "hmsrep/measures.hpp"

#include <algorithm>
#include <sstream>

#include "hmsrep/error.hpp"

namespace hmsrep {

FiniteMeasure make_finite(std::vector<Rational> raw_weights) {
  if (raw_weights.empty()) throw Error(Errc::not_normalized, "empty weight list");
  Rational total;
  for (const auto& w : raw_weights) {
    if (w.sign() <= 0) throw Error(Errc::non_positive_weight, "weight " + w.str() + " is not positive");
    total += w;
  }
  if (total != Rational(1)) throw Error(Errc::not_normalized, "weights sum to " + total.str() + ", not 1");
  std::sort(raw_weights.begin(), raw_weights.end(), std::greater<>());
  return FiniteMeasure(std::move(raw_weights));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    try {
      out.push_back(Rational::parse(text.substr(start, end - start)));
    } catch (const ParseError& e) {
      const std::size_t pos = start + e.position();
      throw ParseError(pos, "invalid rational at position " + std::to_string(pos) + " in '" +
                                std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

FiniteMeasure parse_weights(std::string_view text) { return make_finite(parse_rational_list(text)); }

std::string to_string(const FiniteMeasure& m) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? ", " : "") << m[i];
  os << ')';
  return os.str();
}

bool ClassOrder::operator()(const FiniteMeasure& a, const FiniteMeasure& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto wa = a.weights();
  const auto wb = b.weights();
  return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end(), std::greater<>());
}

CountableFamily CountableFamily::uniform_dyadic(std::uint64_t n_uniform) {
  if (n_uniform < 1) throw Error(Errc::invalid_argument, "uniform_dyadic requires N >= 1");
  return CountableFamily(Kind::uniform_dyadic, n_uniform);
}

CountableFamily CountableFamily::product_geometric(std::uint64_t outcomes) {
  if (outcomes < 2) throw Error(Errc::invalid_argument, "product_geometric requires n >= 2");
  return CountableFamily(Kind::product_geometric, outcomes);
}

CountableFamily CountableFamily::from_name(std::string_view name, std::uint64_t parameter) {
  if (name == "dyadic") return dyadic();
  if (name == "ternary_split") return ternary_split();
  if (name == "uniform_dyadic") return uniform_dyadic(parameter);
  if (name == "product_geometric") return product_geometric(parameter);
  throw Error(Errc::invalid_argument, "unknown family '" + std::string(name) + "'");
}

std::size_t CountableFamily::index_arity() const noexcept {
  return kind_ == Kind::product_geometric ? static_cast<std::size_t>(parameter_ - 1) : 1;
}

std::string_view CountableFamily::name() const noexcept {
  switch (kind_) {
    case Kind::dyadic: return "dyadic";
    case Kind::uniform_dyadic: return "uniform_dyadic";
    case Kind::ternary_split: return "ternary_split";
    case Kind::product_geometric: return "product_geometric";
  }
  return "";
}

std::string CountableFamily::str() const {
  switch (kind_) {
    case Kind::dyadic: return "Dyadic";
    case Kind::uniform_dyadic: return "UniformDyadic(" + std::to_string(parameter_) + ")";
    case Kind::ternary_split: return "TernarySplit";
    case Kind::product_geometric: return "ProductGeometric(" + std::to_string(parameter_) + ")";
  }
  return "";
}

namespace {

Rational one_dim_atom(const CountableFamily& f, Index i) {
  const long li = static_cast<long>(i);
  switch (f.kind()) {
    case CountableFamily::Kind::dyadic:
      return Rational::pow2(-li);
    case CountableFamily::Kind::uniform_dyadic: {
      const Rational inv_n(1, static_cast<long>(f.parameter()));
      if (i < f.parameter()) return inv_n;
      return inv_n * Rational::pow2(static_cast<long>(f.parameter()) - li - 1);
    }
    case CountableFamily::Kind::ternary_split:
      if (i <= 2) return Rational(1, 3);
      return Rational(1, 3) * Rational::pow2(2 - li);
    case CountableFamily::Kind::product_geometric:
      break;
  }
  throw Error(Errc::index_arity, "multi-index family queried with a scalar index");
}

}  // namespace

Rational atom(const CountableFamily& family, std::span<const Index> index) {
  if (index.size() != family.index_arity()) {
    throw Error(Errc::index_arity, family.str() + " expects an index of length " +
                                       std::to_string(family.index_arity()) + ", got " +
                                       std::to_string(index.size()));
  }
  for (Index c : index) {
    if (c == 0) throw Error(Errc::invalid_argument, "atom indices are 1-based");
  }
  if (family.kind() != CountableFamily::Kind::product_geometric) return one_dim_atom(family, index[0]);
  long exponent = 0;
  for (Index c : index) exponent += static_cast<long>(c);
  return Rational::pow2(-exponent);
}

Rational atom(const CountableFamily& family, Index index) {
  return atom(family, std::span<const Index>(&index, 1));
}

Rational tail_mass(const CountableFamily& family, Index depth) {
  const long k = static_cast<long>(depth);
  switch (family.kind()) {
    case CountableFamily::Kind::dyadic:
      return Rational::pow2(-k);
    case CountableFamily::Kind::uniform_dyadic: {
      const long n = static_cast<long>(family.parameter());
      const Rational inv_n(1, n);
      // Uniform part covers indices 1..N-1; the halving part sums to 1/N.
      if (k < n - 1) return Rational(n - 1 - k) * inv_n + inv_n;
      return inv_n * Rational::pow2(n - k - 1);
    }
    case CountableFamily::Kind::ternary_split:
      if (k == 0) return Rational(1);
      if (k == 1) return Rational(2, 3);
      return Rational(1, 3) * Rational::pow2(2 - k);
    case CountableFamily::Kind::product_geometric: {
      const long dims = static_cast<long>(family.parameter()) - 1;
      return Rational::pow2(-k * dims);
    }
  }
  return Rational(0);
}

std::optional<Index> halving_start(const CountableFamily& family) {
  switch (family.kind()) {
    case CountableFamily::Kind::dyadic: return Index{1};
    case CountableFamily::Kind::uniform_dyadic:
      return family.parameter() <= 1 ? Index{1} : Index{family.parameter() - 1};
    case CountableFamily::Kind::ternary_split: return Index{2};
    case CountableFamily::Kind::product_geometric: return std::nullopt;
  }
  return std::nullopt;
}

MeasureClass classify(const MeasureDescription& description) {
  struct Visitor {
    MeasureClass operator()(const FiniteMeasure& m) const { return FiniteClass{m.size()}; }
    MeasureClass operator()(const CountableFamily&) const { return CountableClass{}; }
    MeasureClass operator()(const ContinuousSpace&) const { return ContinuousClass{}; }
    MeasureClass operator()(const ContinuousWithAtom& c) const {
      if (c.atom_mass.sign() <= 0 || c.atom_mass >= Rational(1)) {
        throw Error(Errc::invalid_argument, "atom mass must lie in (0, 1), got " + c.atom_mass.str());
      }
      return ContinuousWithAtomClass{c.atom_mass};
    }
  };
  return std::visit(Visitor{}, description);
}

std::string to_string(const MeasureClass& cls) {
  struct Visitor {
    std::string operator()(const FiniteClass& c) const { return "FiniteClass(" + std::to_string(c.n) + ")"; }
    std::string operator()(const CountableClass&) const { return "CountableClass"; }
    std::string operator()(const ContinuousClass&) const { return "ContinuousClass"; }
    std::string operator()(const ContinuousWithAtomClass& c) const {
      return "ContinuousWithAtomClass(" + c.a.str() + ")";
    }
  };
  return std::visit(Visitor{}, cls);
}

}  // namespace hmsrep
