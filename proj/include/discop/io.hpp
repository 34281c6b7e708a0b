#pragma once

#include <string>

#include <json.hpp>

#include "discop/classify.hpp"
#include "discop/decompose.hpp"
#include "discop/instance.hpp"
#include "discop/oracle.hpp"

namespace discop {

using Json = nlohmann::json;

/// Inverse of Label::str(): "orbit:index" with two integers becomes a
/// structured label, anything else a named one.
Label parse_label(const std::string& s);

/// Instance file form. Finite instances keep their point order; structured
/// families list their orbits; rule families are rendered with an
/// "infinite_family" marker plus `family_preview` orbits for inspection.
/// Black-box instances have no file form.
Json render_instance(const Instance& inst, std::int64_t family_preview = 8);

/// Validating parser for the instance file form. Positional problems raise
/// ParseError; semantic ones raise ValidationError naming the field.
Instance parse_instance(const Json& doc);
Instance parse_instance_text(const std::string& text);

Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);
Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);
Json to_json(const SupH& s);
SupH sup_h_from_json(const Json& j);

/// Machine report documents. Every document carries schema_version and a
/// kind tag; parse is the exact inverse of render on the data model. When
/// any verdict is window-verified the classification document also states
/// the window used (derived from the verdicts, not stored).
Json classification_document(const ClassificationReport& rep);
ClassificationReport classification_from_document(const Json& doc);
Json decomposition_document(const ShiftDecomposition& dec);
ShiftDecomposition decomposition_from_document(const Json& doc);
Json crosscheck_document(const CrosscheckReport& rep);
CrosscheckReport crosscheck_from_document(const Json& doc);

/// Canonical byte form used everywhere a document is written out: sorted
/// keys, two-space indent, trailing newline.
std::string dump_document(const Json& doc);

}  // namespace discop
