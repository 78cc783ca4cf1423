#include "hmsrep/json.hpp"

#include "hmsrep/error.hpp"

namespace hmsrep {

namespace {

json rationals(std::span<const Rational> xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x);
  return out;
}

void put_family_parameter(json& j, const CountableFamily& f) {
  if (f.kind() == CountableFamily::Kind::uniform_dyadic) j["N"] = f.parameter();
  if (f.kind() == CountableFamily::Kind::product_geometric) j["n"] = f.parameter();
}

[[noreturn]] void bad_json(const std::string& what) { throw ParseError(0, what); }

}  // namespace

void to_json(json& j, const Rational& r) { j = r.fraction_str(); }

void to_json(json& j, const FiniteMeasure& m) { j = json{{"weights", rationals(m.weights())}}; }

void to_json(json& j, const CountableFamily& f) {
  j = json{{"family", f.name()}};
  put_family_parameter(j, f);
}

void to_json(json& j, const MeasureClass& c) {
  j = json{{"class", to_string(c)}};
  if (const auto* f = std::get_if<FiniteClass>(&c)) j["atoms"] = f->n;
  if (const auto* a = std::get_if<ContinuousWithAtomClass>(&c)) j["atom_mass"] = a->a;
}

void to_json(json& j, const BitStream& s) { j = json{{"pre", s.pre}, {"period", s.period}}; }

void to_json(json& j, const BlockPartition& p) {
  j = json{{"source", p.source}, {"target", p.target}, {"blocks", p.blocks}};
}

void to_json(json& j, const LeqFailure& f) {
  j = json{{"source", f.source}, {"target", f.target}, {"unrealizable_weight", nullptr},
           {"search_nodes", f.search_nodes}};
  if (f.unrealizable_weight) j["unrealizable_weight"] = *f.unrealizable_weight;
}

void to_json(json& j, const DominanceFailure& f) {
  j = json{{"coarsening", f.coarsening}, {"undominated", f.undominated}};
}

void to_json(json& j, const NoLubCertificate& c) {
  j = json{{"verdict", "no_least_upper_bound"},
           {"family", c.family},
           {"ub1", c.ub1},
           {"ub2", c.ub2},
           {"ub1_witnesses", c.ub1_witnesses},
           {"ub2_witnesses", c.ub2_witnesses},
           {"ub1_not_below_ub2", c.ub1_not_below_ub2},
           {"ub2_not_below_ub1", c.ub2_not_below_ub1},
           {"common_coarsenings", c.common_coarsenings},
           {"dominance_failures", c.dominance_failures}};
}

void to_json(json& j, const Interval& i) { j = json{{"lo", i.lo}, {"hi", i.hi}}; }

void to_json(json& j, const ContinuumEmbedding& e) {
  j = json{{"intervals", e.intervals}, {"uncovered", e.uncovered}};
}

void to_json(json& j, const CountableBlock& b) {
  j = json{{"atoms", b.atoms}, {"tail", nullptr}};
  if (const auto* all = std::get_if<AllFrom>(&b.tail)) {
    j["tail"] = json{{"kind", "all_from"}, {"start", all->start}};
  } else if (const auto* rule = std::get_if<BitRule>(&b.tail)) {
    j["tail"] = json{{"kind", "bits"}, {"first_atom", rule->first_atom}, {"bits", rule->bits}, {"value", rule->value}};
  }
}

void to_json(json& j, const CountableBlockAssignment& a) {
  json masses = json::array();
  for (const auto& b : a.blocks) masses.push_back(block_mass(a.family, b));
  j = json{{"source", a.source}, {"family", a.family}, {"blocks", a.blocks}, {"block_masses", masses}};
}

void to_json(json& j, const UniformObstruction& o) {
  j = json{{"atom_mass", o.atom_mass}, {"atoms", o.atoms}, {"uniform", o.uniform}, {"strict_gap", o.strict_gap}};
}

void to_json(json& j, const PigeonholeWitness& w) {
  j = json{{"source", w.source},
           {"target", w.target},
           {"threshold", w.threshold},
           {"heavy_target_atoms", w.heavy_target_atoms},
           {"combined_heavy_mass", w.combined_heavy_mass},
           {"max_source_weight", w.max_source_weight},
           {"source_weights_at_least_threshold", rationals(w.source_weights_at_least_threshold)},
           {"heavy_atoms_need_distinct_blocks", w.heavy_atoms_need_distinct_blocks},
           {"contradiction", w.contradiction}};
}

void to_json(json& j, const UniformDyadicWitness& w) {
  j = json{{"family", w.family},
           {"uniform_part", w.uniform_part},
           {"halving_part", w.halving_part},
           {"normalized", w.normalized}};
}

void to_json(json& j, const ContextSpace& c) {
  if (std::holds_alternative<ContinuousUnit>(c)) {
    j = json{{"type", "continuous_unit"}};
  } else {
    const auto& f = std::get<CountableContext>(c).family;
    j = json{{"type", "countable"}, {"family", f.name()}};
    put_family_parameter(j, f);
  }
}

void to_json(json& j, const QSequence& q) { j = rationals(q.q); }

void to_json(json& j, const Hms& h) {
  json rule{{"kind", h.rule_kind()}};
  if (const auto* r = std::get_if<ThresholdRule>(&h.rule())) {
    json cuts = json::array();
    for (const auto& c : r->cuts) cuts.push_back(rationals(c));
    rule["cuts"] = cuts;
  } else if (const auto* r = std::get_if<ProductBitsRule>(&h.rule())) {
    rule["q"] = r->q;
    // Expansions whose period is too long to list are left null.
    json bits = json::array();
    for (const auto& q : r->q) {
      json row = json::array();
      for (const auto& x : q.q) {
        const auto s = expand_greedy_bounded(x, kMaxListedBits);
        row.push_back(s ? json(*s) : json(nullptr));
      }
      bits.push_back(row);
    }
    rule["bits"] = bits;
  } else if (const auto* r = std::get_if<SphereDiameterRule>(&h.rule())) {
    rule["u"] = r->u;
  } else {
    rule["u"] = std::get<SphereBandRule>(h.rule()).u;
  }
  j = json{{"context", h.context()}, {"outcomes", h.outcomes()}, {"rule", rule}};
}

void to_json(json& j, const OutcomeDistribution& d) {
  j = json::object();
  for (std::size_t i = 0; i < d.outcomes.size(); ++i) j[d.outcomes[i]] = d.probabilities[i];
}

void to_json(json& j, const SampleReport& r) {
  json counts = json::object();
  for (std::size_t i = 0; i < r.outcomes.size(); ++i) counts[r.outcomes[i]] = r.counts[i];
  j = json{{"seed", r.seed}, {"n", r.n}, {"counts", counts}, {"exact", nullptr}};
  if (r.exact) j["exact"] = *r.exact;
}

void to_json(json& j, const SigmaMorphismReport& r) {
  j = json{{"depth", r.depth},
           {"expected", rationals(r.expected)},
           {"exact", rationals(r.exact)},
           {"partial", rationals(r.partial)},
           {"uncovered", r.uncovered},
           {"tail_bound", r.tail_bound},
           {"enumerated", r.enumerated},
           {"exact_match", r.exact_match},
           {"bracketed", r.bracketed},
           {"disjoint_cover", r.disjoint_cover},
           {"pass", r.pass()}};
}

void to_json(json& j, const BlochVector& v) { j = json::array({v.x, v.y, v.z}); }

void to_json(json& j, const Band& b) {
  j = json{{"lo", b.lo}, {"hi", b.hi}, {"outcome", b.outcome}, {"theta_top", b.theta_top},
           {"theta_bottom", b.theta_bottom}};
}

void to_json(json& j, const BandLayout& l) { j = json{{"lambda", l.lambda}, {"bands", l.bands}}; }

void to_json(json& j, const EquivalenceRow& r) {
  j = json{{"state_id", r.state_id},
           {"overlap", r.overlap},
           {"born", r.born},
           {"aerts_exact", nullptr},
           {"reduced_exact", nullptr},
           {"aerts_mc", r.aerts_mc},
           {"reduced_mc", r.reduced_mc},
           {"aerts_ok", r.aerts_ok},
           {"reduced_ok", r.reduced_ok}};
  if (r.overlap_exact) j["overlap"] = *r.overlap_exact;
  if (r.aerts_exact) j["aerts_exact"] = *r.aerts_exact;
  if (r.reduced_exact) j["reduced_exact"] = *r.reduced_exact;
}

void to_json(json& j, const EquivalenceReport& r) {
  j = json{{"seed", r.seed}, {"n", r.n}, {"rows", r.rows}, {"pass", r.pass()}};
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad_json("expected a rational string, got " + j.dump());
}

FiniteMeasure finite_measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array()) {
    bad_json("expected {\"weights\": [...]}");
  }
  std::vector<Rational> w;
  for (const auto& x : j["weights"]) w.push_back(rational_from_json(x));
  return make_finite(std::move(w));
}

CountableFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) bad_json("expected {\"family\": name}");
  std::uint64_t param = 0;
  for (const char* key : {"N", "n"}) {
    if (j.contains(key)) {
      if (!j[key].is_number_unsigned()) bad_json(std::string("family parameter ") + key + " must be a positive integer");
      param = j[key].get<std::uint64_t>();
    }
  }
  return CountableFamily::from_name(j["family"].get<std::string>(), param);
}

BitStream bit_stream_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pre") || !j.contains("period")) bad_json("expected {\"pre\": [...], \"period\": [...]}");
  BitStream s;
  s.pre.clear();
  s.period.clear();
  for (const char* key : {"pre", "period"}) {
    if (!j[key].is_array()) bad_json(std::string(key) + " must be an array");
    auto& dst = std::string_view(key) == "pre" ? s.pre : s.period;
    for (const auto& b : j[key]) {
      if (!b.is_number_unsigned() || b.get<unsigned>() > 1) bad_json("bits must be 0 or 1");
      dst.push_back(static_cast<std::uint8_t>(b.get<unsigned>()));
    }
  }
  if (s.period.empty()) bad_json("period must be non-empty");
  return s;
}

}  // namespace hmsrep
