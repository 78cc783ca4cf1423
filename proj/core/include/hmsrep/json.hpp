#pragma once

#include <nlohmann/json.hpp>

#include "hmsrep/dyadic.hpp"
#include "hmsrep/hms.hpp"
#include "hmsrep/measures.hpp"
#include "hmsrep/order.hpp"
#include "hmsrep/rational.hpp"
#include "hmsrep/spin.hpp"

// JSON encodings. Rationals are always "p/q" strings and index sets are
// sorted arrays. The to_json overloads are found by nlohmann's ADL lookup.

namespace hmsrep {

using json = nlohmann::ordered_json;

void to_json(json& j, const Rational& r);
void to_json(json& j, const FiniteMeasure& m);
void to_json(json& j, const CountableFamily& f);
void to_json(json& j, const MeasureClass& c);
void to_json(json& j, const BitStream& s);

void to_json(json& j, const BlockPartition& p);
void to_json(json& j, const LeqFailure& f);
void to_json(json& j, const DominanceFailure& f);
void to_json(json& j, const NoLubCertificate& c);
void to_json(json& j, const Interval& i);
void to_json(json& j, const ContinuumEmbedding& e);
void to_json(json& j, const CountableBlock& b);
void to_json(json& j, const CountableBlockAssignment& a);
void to_json(json& j, const UniformObstruction& o);
void to_json(json& j, const PigeonholeWitness& w);
void to_json(json& j, const UniformDyadicWitness& w);

void to_json(json& j, const ContextSpace& c);
void to_json(json& j, const QSequence& q);
void to_json(json& j, const Hms& h);
void to_json(json& j, const OutcomeDistribution& d);
void to_json(json& j, const SampleReport& r);
void to_json(json& j, const SigmaMorphismReport& r);

void to_json(json& j, const BlochVector& v);
void to_json(json& j, const Band& b);
void to_json(json& j, const BandLayout& l);
void to_json(json& j, const EquivalenceRow& r);
void to_json(json& j, const EquivalenceReport& r);

/// Throws ParseError for a malformed value.
Rational rational_from_json(const json& j);
/// {"weights": ["2/3", "1/3"]}. Throws ParseError, NotNormalized or
/// NonPositiveWeight.
FiniteMeasure finite_measure_from_json(const json& j);
/// {"family": "uniform_dyadic", "N": 4}; "n" for product_geometric.
CountableFamily family_from_json(const json& j);
/// {"pre": [1, 0], "period": [1]}.
BitStream bit_stream_from_json(const json& j);

}  // namespace hmsrep
