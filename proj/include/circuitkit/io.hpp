#pragma once

#include <json.hpp>

#include "circuitkit/augment.hpp"
#include "circuitkit/graver.hpp"
#include "circuitkit/proximity.hpp"

namespace circuitkit::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Numbers are exact: strings "p/q" or JSON integers. Floats are rejected.
Rational rational_from_json(const json& j);
json to_json(const Rational& q);
json to_json(const Integer& z);
json to_json(const Vec& v);
json to_json(const IntVec& v);
json to_json(const IndexSet& s);
Vec vec_from_json(const json& j);
IntVec intvec_from_json(const json& j);

// {"rows":m,"cols":n,"entries":[[...],...]}; a bare list of rows is accepted on input.
json to_json(const RatMatrix& A);
RatMatrix matrix_from_json(const json& j);
RatMatrix matrix_from_csv(const std::string& text);
std::string matrix_to_csv(const RatMatrix& A);

// {"kernel_of": <matrix>} or {"span_of": <matrix>}; a bare matrix means kernel_of.
json to_json(const Subspace& W);
Subspace subspace_from_json(const json& j);

// {"A":..., "b":[...], "c":[...], "u":[... or null]}; u absent or null means standard form.
json to_json(const LPInstance& lp);
LPInstance lp_from_json(const json& j);
json to_json(const LPResult& r);

json to_json(const ElementaryVector& g);
json to_json(const ImbalanceReport& r);
json to_json(const CircuitRatioDigraph& G);
json to_json(const KappaStarResult& r);
json to_json(const AugmentationTrace& t);
json to_json(const AuditReport& r);
json to_json(const ProximityWitness& w);
json to_json(const TransferResult& r);
json to_json(const FixingResult& r);
json to_json(const ApxSolution& s);
json to_json(const FeasibilityRun& r);
json to_json(const GraverBasis& g);
json to_json(const IpProximity& r);
json to_json(const ConjectureReport& r);
json to_json(const HkReport& r);
json to_json(const AppendixReport& r);

// Wraps a payload with schema_version and kind.
json report(const std::string& kind, json payload);

json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

}  // namespace circuitkit::io
