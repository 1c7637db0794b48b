#pragma once

#include <json.hpp>

#include "qfan/blowup.hpp"
#include "qfan/cobordism.hpp"
#include "qfan/polytope.hpp"

namespace qfan {

// Insertion-ordered JSON keeps save/load byte-stable.
using Json = nlohmann::ordered_json;

// All numbers are exact strings ("p/q") or coefficient arrays - never
// floats. Indices are 1-based on the wire.

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json field_to_json(const RealField& f);
FieldPtr field_from_json(const Json& j);

Json scalar_to_json(const Scalar& s);
/// Accepts {"coeffs": [...]}, a bare rational string, or an integer.
Scalar scalar_from_json(const Json& j, const FieldPtr& field);

Json matrix_to_json(const ExactMatrix& m);  // array of rows
ExactMatrix matrix_from_json(const Json& j, const FieldPtr& field);

Json indexset_to_json(const IndexSet& s);     // 1-based
IndexSet indexset_from_json(const Json& j);   // back to 0-based

Json fan_to_json(const QuantumFan& fan);
QuantumFan fan_from_json(const Json& j, FieldPtr field = nullptr);

Json morphism_to_json(const FanMorphism& m);
FanMorphism morphism_from_json(const Json& j);

Json birational_to_json(const BirationalFanMorphism& b);
BirationalFanMorphism birational_from_json(const Json& j);

Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j, FieldPtr field = nullptr);

Json cobordism_to_json(const FanCobordism& c);
FanCobordism cobordism_from_json(const Json& j, FieldPtr field = nullptr);

Json report_to_json(const ValidationReport& r);
Json witness_to_json(const BirationalWitness& w);
Json stratum_to_json(const FiberStratum& s);

/**
 * Named object store sharing one field; every object revalidates at save
 * time and the provenance log records the operations applied.
 */
struct Document {
  FieldPtr field;
  std::vector<std::pair<std::string, Json>> objects;  // insertion order
  std::vector<std::string> provenance;

  const Json* find(const std::string& name) const;
};

Json document_to_json(const Document& d);
Document document_from_json(const Json& j);
/// Serialization with save-time validation of every stored object.
std::string document_save(const Document& d);

/// Canonical pretty serialization used by the CLI (2-space indent).
std::string to_pretty(const Json& j);

}  // namespace qfan
