#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

#include "hmsrep/error.hpp"
#include "hmsrep/hms.hpp"
#include "hmsrep/json.hpp"
#include "hmsrep/measures.hpp"
#include "hmsrep/order.hpp"
#include "hmsrep/spin.hpp"

namespace hmsrep::cli {

namespace {

enum class Format { text, json, csv };

// Signals a domain refusal that is not an Error from the core library.
struct Refusal {
  std::string message;
};

constexpr std::uint64_t kMaxEnumeratedAtoms = std::uint64_t{1} << 24;

std::string fmt_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_weights(std::span<const Rational> ws) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ";" : "") + ws[i].fraction_str();
  return out;
}

template <class Seq>
std::string join(const Seq& xs, const char* sep) {
  std::ostringstream os;
  bool first = true;
  for (const auto& x : xs) {
    if (!first) os << sep;
    os << x;
    first = false;
  }
  return os.str();
}

std::string braces(const std::vector<std::size_t>& atoms) { return "{" + join(atoms, ", ") + "}"; }

std::string describe_block(const CountableBlock& b) {
  std::string s = "{" + join(b.atoms, ", ") + "}";
  if (const auto* all = std::get_if<AllFrom>(&b.tail)) {
    s += " + all i >= " + std::to_string(all->start);
  } else if (const auto* rule = std::get_if<BitRule>(&b.tail)) {
    s += " + bits " + to_string(rule->bits) + " from i = " + std::to_string(rule->first_atom);
  }
  return s;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::parse_error:
    case Errc::not_normalized:
    case Errc::non_positive_weight:
    case Errc::index_arity:
    case Errc::invalid_argument:
    case Errc::not_orthonormal:
      return 2;
    default:
      return 1;
  }
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

Amplitudes parse_amplitudes(const std::string& text) {
  Amplitudes out;
  std::size_t pos = 0;
  auto read = [&](std::string_view tok, std::size_t at) {
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || first == last) {
      throw ParseError(at, "malformed amplitude '" + std::string(tok) + "' at position " + std::to_string(at));
    }
    return v;
  };
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string_view item(text.data() + pos, end - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) {
      out.emplace_back(read(item, pos), 0.0);
    } else {
      out.emplace_back(read(item.substr(0, colon), pos), read(item.substr(colon + 1), pos + colon + 1));
    }
    pos = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

struct ClassifyOptions {
  std::string weights;
  std::string family;
  std::uint64_t param = 0;
  bool continuum = false;
  std::string atom;
};

void cmd_classify(const ClassifyOptions& o, Format fmt, std::ostream& out) {
  const int given = !o.weights.empty() + !o.family.empty() + o.continuum + !o.atom.empty();
  if (given != 1) {
    throw Error(Errc::invalid_argument, "give exactly one of --weights, --family, --continuum, --continuum-atom");
  }
  std::optional<FiniteMeasure> m;
  MeasureDescription d = ContinuousSpace{};
  if (!o.weights.empty()) {
    m = parse_weights(o.weights);
    d = *m;
  } else if (!o.family.empty()) {
    d = CountableFamily::from_name(o.family, o.param);
  } else if (!o.atom.empty()) {
    d = ContinuousWithAtom{Rational::parse(o.atom)};
  }
  const MeasureClass c = classify(d);
  switch (fmt) {
    case Format::json: {
      json j = c;
      if (m) j["measure"] = *m;
      if (const auto* f = std::get_if<CountableFamily>(&d)) j["family"] = *f;
      emit_json(out, j);
      break;
    }
    case Format::csv:
      out << "class,weights\n" << to_string(c) << ',' << (m ? csv_weights(m->weights()) : "") << '\n';
      break;
    case Format::text:
      out << to_string(c) << '\n';
      if (m) out << "measure: " << to_string(*m) << '\n';
      break;
  }
}

// ---------------------------------------------------------------------------

struct LeqOptions {
  std::string source;
  std::string target;
  std::string target_family;
  std::uint64_t param = 0;
};

void leq_countable(const FiniteMeasure& s, const CountableFamily& f, Format fmt, std::ostream& out) {
  const auto a = leq_finite_countable(s, f);
  switch (fmt) {
    case Format::json: {
      json j{{"verdict", a ? "leq" : "no_morphism"}, {"source", s}, {"target", f}};
      if (a) j["assignment"] = *a;
      emit_json(out, j);
      break;
    }
    case Format::csv:
      out << "verdict,block,source_weight,target_atoms\n";
      if (!a) {
        out << "no_morphism,,,\n";
        break;
      }
      for (std::size_t k = 0; k < a->blocks.size(); ++k) {
        out << "leq," << k + 1 << ',' << s[k].fraction_str() << ',' << describe_block(a->blocks[k]) << '\n';
      }
      break;
    case Format::text:
      out << "verdict: " << (a ? "leq" : "no morphism") << '\n'
          << "source: " << to_string(s) << '\n'
          << "target: " << f.str() << '\n';
      if (a) {
        for (std::size_t k = 0; k < a->blocks.size(); ++k) {
          out << "block " << k + 1 << " [" << s[k] << "]: " << describe_block(a->blocks[k]) << '\n';
        }
      }
      break;
  }
}

void cmd_leq(const LeqOptions& o, Format fmt, std::ostream& out) {
  if (o.target.empty() == o.target_family.empty()) {
    throw Error(Errc::invalid_argument, "give exactly one of --target, --target-family");
  }
  const FiniteMeasure s = parse_weights(o.source);
  if (!o.target_family.empty()) {
    leq_countable(s, CountableFamily::from_name(o.target_family, o.param), fmt, out);
    return;
  }
  const FiniteMeasure t = parse_weights(o.target);
  const auto p = leq_finite(s, t);
  const auto f = p ? std::nullopt : explain_leq_failure(s, t);
  switch (fmt) {
    case Format::json: {
      json j{{"verdict", p ? "leq" : "no_morphism"}, {"source", s}, {"target", t}};
      if (p) j["partition"] = p->blocks;
      if (f) j["failure"] = *f;
      emit_json(out, j);
      break;
    }
    case Format::csv:
      out << "verdict,block,source_weight,target_atoms\n";
      if (p) {
        for (std::size_t k = 0; k < p->blocks.size(); ++k) {
          out << "leq," << k + 1 << ',' << s[k].fraction_str() << ',' << join(p->blocks[k], ";") << '\n';
        }
      } else {
        out << "no_morphism,,,\n";
      }
      break;
    case Format::text:
      out << "verdict: " << (p ? "leq" : "no morphism") << '\n'
          << "source: " << to_string(s) << '\n'
          << "target: " << to_string(t) << '\n';
      if (p) {
        for (std::size_t k = 0; k < p->blocks.size(); ++k) {
          out << "block " << k + 1 << " [" << s[k] << "]: " << braces(p->blocks[k]) << '\n';
        }
      } else {
        if (f->unrealizable_weight) out << "no subset of target atoms sums to " << *f->unrealizable_weight << '\n';
        out << "search nodes: " << f->search_nodes << '\n';
      }
      break;
  }
}

// ---------------------------------------------------------------------------

struct NoLubOptions {
  std::vector<std::string> members;
  std::string ub1;
  std::string ub2;
};

void cmd_no_lub(const NoLubOptions& o, Format fmt, std::ostream& out) {
  std::vector<FiniteMeasure> family;
  for (const auto& m : o.members) family.push_back(parse_weights(m));
  const FiniteMeasure ub1 = parse_weights(o.ub1);
  const FiniteMeasure ub2 = parse_weights(o.ub2);
  const NoLubCertificate c = verify_no_least_upper_bound(family, ub1, ub2);
  switch (fmt) {
    case Format::json:
      emit_json(out, c);
      break;
    case Format::csv:
      out << "coarsening,undominated_member\n";
      for (const auto& d : c.dominance_failures) {
        out << csv_weights(d.coarsening.weights()) << ',' << csv_weights(d.undominated.weights()) << '\n';
      }
      break;
    case Format::text: {
      out << "verdict: no least upper bound\n"
          << "ub1: " << to_string(ub1) << '\n'
          << "ub2: " << to_string(ub2) << '\n';
      for (std::size_t k = 0; k < family.size(); ++k) {
        std::vector<std::string> b1, b2;
        for (const auto& b : c.ub1_witnesses[k].blocks) b1.push_back(braces(b));
        for (const auto& b : c.ub2_witnesses[k].blocks) b2.push_back(braces(b));
        out << to_string(family[k]) << " <= ub1 via " << join(b1, " ") << '\n'
            << to_string(family[k]) << " <= ub2 via " << join(b2, " ") << '\n';
      }
      auto failure = [&](const char* name, const LeqFailure& f) {
        out << name << ": ";
        if (f.unrealizable_weight) {
          out << "no subset sums to " << *f.unrealizable_weight;
        } else {
          out << "exhaustive search";
        }
        out << " (" << f.search_nodes << " nodes)\n";
      };
      failure("ub1 not <= ub2", c.ub1_not_below_ub2);
      failure("ub2 not <= ub1", c.ub2_not_below_ub1);
      std::vector<std::string> common;
      for (const auto& m : c.common_coarsenings) common.push_back(to_string(m));
      out << "common coarsenings: " << join(common, ", ") << '\n';
      for (const auto& d : c.dominance_failures) {
        out << to_string(d.coarsening) << " does not dominate " << to_string(d.undominated) << '\n';
      }
      break;
    }
  }
}

// ---------------------------------------------------------------------------

struct ConstructOptions {
  std::string weights;
  std::string context = "countable";
  Index depth = 10;
};

void check_enumeration_size(Index depth, std::size_t outcomes) {
  if (depth < 1 || depth > 64) throw Error(Errc::too_deep, "depth must lie in [1, 64]");
  std::uint64_t cells = 1;
  for (std::size_t i = 1; i < outcomes; ++i) {
    if (cells > kMaxEnumeratedAtoms / depth) {
      throw Error(Errc::too_large, "truncated enumeration of depth " + std::to_string(depth) + " over " +
                                       std::to_string(outcomes - 1) + " coordinates exceeds 2^24 atoms");
    }
    cells *= depth;
  }
}

void emit_countable_construction(const FiniteMeasure& m, Index depth, Format fmt, std::ostream& out,
                                 json extra = json::object()) {
  if (m.size() < 2) throw Refusal{"countable construction needs at least two outcomes, got " + to_string(m)};
  check_enumeration_size(depth, m.size());
  const QSequence q = q_recursion(m);
  const bool product_ok = product_formula_check(m, q);
  const Hms h = countable_hms_from_finite(m);
  const OutcomeDistribution exact = exact_probabilities(h, std::size_t{0});
  const SigmaMorphismReport r = verify_sigma_morphism(h, m, depth);
  switch (fmt) {
    case Format::json: {
      json j = std::move(extra);
      j["measure"] = m;
      j["context"] = "countable";
      j["q"] = q;
      j["product_formula"] = product_ok;
      j["hms"] = h;
      j["exact"] = exact;
      j["verification"] = r;
      emit_json(out, j);
      break;
    }
    case Format::csv:
      out << "outcome,weight,q,exact,partial\n";
      for (std::size_t i = 0; i < m.size(); ++i) {
        out << h.outcomes()[i] << ',' << m[i].fraction_str() << ','
            << (i < q.q.size() ? q.q[i].fraction_str() : "") << ',' << exact.probabilities[i].fraction_str() << ','
            << r.partial[i].fraction_str() << '\n';
      }
      break;
    case Format::text: {
      std::vector<std::string> qs;
      for (const auto& x : q.q) qs.push_back(x.str());
      out << "measure: " << to_string(m) << '\n'
          << "context: " << to_string(h.context()) << '\n'
          << "Q: " << join(qs, ", ") << '\n'
          << "product formula: " << (product_ok ? "ok" : "FAILED") << '\n';
      for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        const auto bits = expand_greedy_bounded(q.q[i], kMaxListedBits);
        out << "coordinate " << i + 1 << " bits: "
            << (bits ? to_string(*bits) : "period longer than " + std::to_string(kMaxListedBits) + " bits") << '\n';
      }
      for (std::size_t i = 0; i < m.size(); ++i) {
        out << h.outcomes()[i] << ": exact " << exact.probabilities[i] << ", truncated " << r.partial[i] << '\n';
      }
      out << "depth " << r.depth << ": uncovered " << r.uncovered << " <= tail bound " << r.tail_bound << '\n'
          << "verification: " << (r.pass() ? "pass" : "FAIL") << '\n';
      break;
    }
  }
}

void cmd_construct(const ConstructOptions& o, Format fmt, std::ostream& out) {
  const FiniteMeasure m = parse_weights(o.weights);
  if (o.context == "countable") {
    emit_countable_construction(m, o.depth, fmt, out);
    return;
  }
  const Hms h = threshold_hms(m);
  const OutcomeDistribution exact = exact_probabilities(h, std::size_t{0});
  const auto& cuts = std::get<ThresholdRule>(h.rule()).cuts[0];
  switch (fmt) {
    case Format::json:
      emit_json(out, json{{"measure", m}, {"context", "threshold"}, {"hms", h}, {"exact", exact}});
      break;
    case Format::csv:
      out << "outcome,weight,lo,hi\n";
      for (std::size_t i = 0; i < m.size(); ++i) {
        out << h.outcomes()[i] << ',' << m[i].fraction_str() << ',' << cuts[i].fraction_str() << ','
            << cuts[i + 1].fraction_str() << '\n';
      }
      break;
    case Format::text:
      out << "measure: " << to_string(m) << '\n' << "context: " << to_string(h.context()) << '\n';
      for (std::size_t i = 0; i < m.size(); ++i) {
        out << h.outcomes()[i] << ": [" << cuts[i] << ", " << cuts[i + 1] << ")\n";
      }
      break;
  }
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
  std::string model;
  std::string costheta;
  std::optional<double> theta;
  std::string weights;
  std::uint64_t n = 100000;
  std::uint64_t seed = 0;
};

void cmd_simulate(const SimulateOptions& o, Format fmt, std::ostream& out) {
  if (o.n < 1) throw Error(Errc::invalid_argument, "--n must be >= 1");
  std::optional<Hms> h;
  State state = std::size_t{0};
  if (o.model == "aerts" || o.model == "reduced") {
    if (o.costheta.empty() == !o.theta.has_value()) {
      throw Error(Errc::invalid_argument, "spin models need exactly one of --costheta, --theta");
    }
    const BlochVector u{0.0, 0.0, 1.0};
    if (!o.costheta.empty()) {
      state = SpinState::at_overlap(u, Rational::parse(o.costheta));
    } else {
      state = SpinState::from_vector(BlochVector::unit(std::sin(*o.theta), 0.0, std::cos(*o.theta)));
    }
    h = o.model == "aerts" ? aerts_hms(u) : reduced_hms(u);
  } else {
    if (o.weights.empty()) throw Error(Errc::invalid_argument, "--model " + o.model + " needs --weights");
    const FiniteMeasure m = parse_weights(o.weights);
    if (o.model == "countable") {
      if (m.size() < 2) throw Refusal{"countable construction needs at least two outcomes, got " + to_string(m)};
      h = countable_hms_from_finite(m);
    } else {
      h = threshold_hms(m);
    }
  }
  const SampleReport r = sample(*h, state, o.seed, o.n);
  const double bornish = std::holds_alternative<SpinState>(state)
                             ? born_probability(BlochVector{0.0, 0.0, 1.0}, std::get<SpinState>(state).v)
                             : 0.0;
  std::vector<double> freq;
  std::vector<double> reference;
  std::vector<bool> ok;
  for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
    freq.push_back(static_cast<double>(r.counts[i]) / static_cast<double>(r.n));
    const double p = r.exact ? r.exact->probabilities[i].to_double() : (i == 0 ? bornish : 1.0 - bornish);
    reference.push_back(p);
    ok.push_back(within_four_sigma(p, r.counts[i], r.n));
  }
  switch (fmt) {
    case Format::json: {
      json j = r;
      j = json{{"model", o.model}, {"seed", r.seed}, {"n", r.n}, {"counts", j["counts"]}, {"exact", j["exact"]}};
      json f = json::object();
      json v = json::object();
      for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
        f[r.outcomes[i]] = freq[i];
        v[r.outcomes[i]] = static_cast<bool>(ok[i]);
      }
      j["frequencies"] = f;
      j["within_4sigma"] = v;
      emit_json(out, j);
      break;
    }
    case Format::csv:
      out << "outcome,count,frequency,exact,within_4sigma\n";
      for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
        out << r.outcomes[i] << ',' << r.counts[i] << ',' << fmt_double(freq[i]) << ','
            << (r.exact ? r.exact->probabilities[i].fraction_str() : fmt_double(reference[i])) << ','
            << (ok[i] ? "true" : "false") << '\n';
      }
      break;
    case Format::text:
      out << "model: " << o.model << "  n: " << r.n << "  seed: " << r.seed << '\n';
      for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
        out << r.outcomes[i] << ": " << r.counts[i] << " (" << fmt_double(freq[i]) << ")  expected ";
        if (r.exact) {
          out << r.exact->probabilities[i];
        } else {
          out << fmt_double(reference[i]);
        }
        out << "  " << (ok[i] ? "within 4 sigma" : "OUTSIDE 4 sigma") << '\n';
      }
      break;
  }
}

// ---------------------------------------------------------------------------

void cmd_bands(Index lambda, Format fmt, std::ostream& out) {
  const BandLayout l = band_layout(lambda);
  switch (fmt) {
    case Format::json:
      emit_json(out, l);
      break;
    case Format::csv:
      out << "band,lo,hi,outcome,theta_top,theta_bottom\n";
      for (std::size_t i = 0; i < l.bands.size(); ++i) {
        const Band& b = l.bands[i];
        out << i + 1 << ',' << b.lo.fraction_str() << ',' << b.hi.fraction_str() << ',' << b.outcome << ','
            << fmt_double(b.theta_top) << ',' << fmt_double(b.theta_bottom) << '\n';
      }
      break;
    case Format::text:
      out << "lambda " << l.lambda << ": " << l.bands.size() << " bands, from the top\n";
      for (std::size_t i = 0; i < l.bands.size(); ++i) {
        const Band& b = l.bands[i];
        out << i + 1 << ": a in [" << b.lo << ", " << b.hi << ") -> " << b.outcome << "  theta ["
            << fmt_double(b.theta_top) << ", " << fmt_double(b.theta_bottom) << "]\n";
      }
      break;
  }
}

// ---------------------------------------------------------------------------

struct QuantumOptions {
  std::string amplitudes;
  std::vector<std::string> basis;
  Index depth = 10;
};

void cmd_quantum_reduce(const QuantumOptions& o, Format fmt, std::ostream& out) {
  const Amplitudes psi = parse_amplitudes(o.amplitudes);
  std::vector<Amplitudes> basis;
  if (o.basis.empty()) {
    for (std::size_t i = 0; i < psi.size(); ++i) {
      Amplitudes e(psi.size(), 0.0);
      e[i] = 1.0;
      basis.push_back(std::move(e));
    }
  } else {
    for (const auto& b : o.basis) basis.push_back(parse_amplitudes(b));
  }
  const FiniteMeasure m = pvm_measure(psi, basis);
  if (m.size() < 2) {
    switch (fmt) {
      case Format::json:
        emit_json(out, json{{"measure", m}, {"context", nullptr}});
        break;
      case Format::csv:
        out << "outcome,weight\no1," << m[0].fraction_str() << '\n';
        break;
      case Format::text:
        out << "measure: " << to_string(m) << '\n';
        break;
    }
    throw Refusal{"a single-outcome measurement has no countable construction"};
  }
  emit_countable_construction(m, o.depth, fmt, out);
}

// ---------------------------------------------------------------------------

struct EquivalenceOptions {
  std::size_t points = 19;
  std::uint64_t n = 100000;
  std::uint64_t seed = 0;
};

void cmd_equivalence(const EquivalenceOptions& o, Format fmt, std::ostream& out) {
  if (o.points < 2) throw Error(Errc::invalid_argument, "--points must be >= 2");
  if (o.n < 1) throw Error(Errc::invalid_argument, "--n must be >= 1");
  const BlochVector u{0.0, 0.0, 1.0};
  std::vector<SpinState> states;
  const long last = static_cast<long>(o.points) - 1;
  for (long k = 0; k <= last; ++k) states.push_back(SpinState::at_overlap(u, Rational(2 * k - last, last)));
  const EquivalenceReport r = equivalence_report(u, states, o.n, o.seed);
  auto opt = [](const std::optional<Rational>& x) { return x ? x->fraction_str() : std::string(); };
  switch (fmt) {
    case Format::json:
      emit_json(out, r);
      break;
    case Format::csv:
      out << "state_id,overlap,born,aerts_exact,reduced_exact,aerts_mc,reduced_mc,verdicts\n";
      for (const auto& row : r.rows) {
        out << row.state_id << ',' << opt(row.overlap_exact) << ',' << fmt_double(row.born) << ','
            << opt(row.aerts_exact) << ',' << opt(row.reduced_exact) << ',' << fmt_double(row.aerts_mc) << ','
            << fmt_double(row.reduced_mc) << ',' << (row.aerts_ok ? "aerts_ok" : "aerts_fail") << ';'
            << (row.reduced_ok ? "reduced_ok" : "reduced_fail") << '\n';
      }
      break;
    case Format::text:
      out << "n: " << r.n << "  seed: " << r.seed << '\n';
      for (const auto& row : r.rows) {
        out << row.state_id << ": u.v " << opt(row.overlap_exact) << "  born " << fmt_double(row.born)
            << "  exact " << opt(row.aerts_exact) << " / " << opt(row.reduced_exact) << "  mc "
            << fmt_double(row.aerts_mc) << " / " << fmt_double(row.reduced_mc) << "  "
            << (row.aerts_ok && row.reduced_ok ? "ok" : "FAIL") << '\n';
      }
      out << "equivalence: " << (r.pass() ? "pass" : "FAIL") << '\n';
      break;
  }
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  CLI::App app{"Hidden measurement system representations: order, construction and spin models", "hmsrep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hmsrep 0.1.0");

  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  };

  ClassifyOptions classify_o;
  auto* classify = app.add_subcommand("classify", "Measure class of a finite measure, family or continuum");
  classify->add_option("--weights", classify_o.weights, "Comma-separated rationals, e.g. 2/3,1/3");
  classify->add_option("--family", classify_o.family, "dyadic, uniform_dyadic, ternary_split, product_geometric");
  classify->add_option("--param", classify_o.param, "Family parameter (N or n)");
  classify->add_flag("--continuum", classify_o.continuum, "The unit interval");
  classify->add_option("--continuum-atom", classify_o.atom, "Continuum plus one atom of this mass");
  add_format(classify);

  LeqOptions leq_o;
  auto* leq = app.add_subcommand("leq", "Decide source <= target with a block witness");
  leq->add_option("--source", leq_o.source, "Source weights")->required();
  leq->add_option("--target", leq_o.target, "Target weights");
  leq->add_option("--target-family", leq_o.target_family, "Countable target family");
  leq->add_option("--param", leq_o.param, "Target family parameter");
  add_format(leq);

  NoLubOptions nolub_o;
  auto* nolub = app.add_subcommand("no-lub", "Certify that a family has no least upper bound");
  nolub->add_option("--member", nolub_o.members, "Family member (repeatable)")->required();
  nolub->add_option("--ub1", nolub_o.ub1, "First upper bound")->required();
  nolub->add_option("--ub2", nolub_o.ub2, "Second upper bound")->required();
  add_format(nolub);

  ConstructOptions construct_o;
  auto* construct = app.add_subcommand("construct", "Build an h.m.s. realizing a finite measure");
  construct->add_option("--weights", construct_o.weights, "Outcome weights")->required();
  construct->add_option("--context", construct_o.context, "countable or threshold")
      ->check(CLI::IsMember({"countable", "threshold"}));
  construct->add_option("--depth", construct_o.depth, "Truncation depth of the verification");
  add_format(construct);

  SimulateOptions simulate_o;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of a model against its exact probabilities");
  simulate->add_option("--model", simulate_o.model, "aerts, reduced, threshold or countable")
      ->required()
      ->check(CLI::IsMember({"aerts", "reduced", "threshold", "countable"}));
  simulate->add_option("--costheta", simulate_o.costheta, "Rational u.v for the spin models");
  simulate->add_option("--theta", simulate_o.theta, "Polar angle in radians for the spin models");
  simulate->add_option("--weights", simulate_o.weights, "Outcome weights for threshold and countable");
  simulate->add_option("--n", simulate_o.n, "Number of samples");
  simulate->add_option("--seed", simulate_o.seed, "Generator seed");
  add_format(simulate);

  Index lambda = 0;
  auto* bands = app.add_subcommand("bands", "Band layout of the reduced spin model");
  bands->add_option("--lambda", lambda, "Context index")->required();
  add_format(bands);

  QuantumOptions quantum_o;
  auto* quantum = app.add_subcommand("quantum-reduce", "Projective measurement to a finite measure and construction");
  quantum->add_option("--amplitudes", quantum_o.amplitudes, "Comma-separated amplitudes, each re or re:im")
      ->required();
  quantum->add_option("--basis", quantum_o.basis, "Basis vector (repeatable; default standard basis)");
  quantum->add_option("--depth", quantum_o.depth, "Truncation depth of the verification");
  add_format(quantum);

  EquivalenceOptions equivalence_o;
  auto* equivalence = app.add_subcommand("equivalence", "Compare both spin models with the Born rule on a grid");
  equivalence->add_option("--points", equivalence_o.points, "Grid points for u.v in [-1, 1]");
  equivalence->add_option("--n", equivalence_o.n, "Samples per state and model");
  equivalence->add_option("--seed", equivalence_o.seed, "Generator seed");
  add_format(equivalence);

  RunResult result;
  std::ostringstream out;
  std::ostringstream err;

  std::vector<std::string> argv_store{"hmsrep"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? 0 : 2;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  const Format fmt = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
  try {
    if (classify->parsed()) cmd_classify(classify_o, fmt, out);
    if (leq->parsed()) cmd_leq(leq_o, fmt, out);
    if (nolub->parsed()) cmd_no_lub(nolub_o, fmt, out);
    if (construct->parsed()) cmd_construct(construct_o, fmt, out);
    if (simulate->parsed()) cmd_simulate(simulate_o, fmt, out);
    if (bands->parsed()) cmd_bands(lambda, fmt, out);
    if (quantum->parsed()) cmd_quantum_reduce(quantum_o, fmt, out);
    if (equivalence->parsed()) cmd_equivalence(equivalence_o, fmt, out);
  } catch (const ParseError& e) {
    err << "error: ParseError at position " << e.position() << ": " << e.what() << '\n';
    result.exit_code = 2;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    result.exit_code = exit_code_for(e.code());
  } catch (const Refusal& r) {
    err << "refused: " << r.message << '\n';
    result.exit_code = 1;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace hmsrep::cli
