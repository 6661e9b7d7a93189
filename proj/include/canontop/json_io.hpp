#pragma once

// JSON forms of every type that crosses the command line. Rationals are
// written as "p/q" strings; parse errors throw std::invalid_argument.

#include <string>

#include <json.hpp>

#include "canontop/bergman.hpp"
#include "canontop/finite_action.hpp"
#include "canontop/formal_sum.hpp"
#include "canontop/ring_embed.hpp"
#include "canontop/witnesses.hpp"

namespace canontop::json_io {

using Json = nlohmann::ordered_json;

Json read_file(const std::string& path);

Json to_json(const Rational& r);
Rational rational_from(const Json& j);

Json to_json(const PLHomeo& u);
PLHomeo pl_from(const Json& j);

/// "Z", a group name such as "S3", or {"table": [[...]], "labels": [...]}.
CoeffGroup coeff_group_from(const Json& j);
Json coeff_group_to_json(const CoeffGroup& g);
Coeff coeff_from(const Json& j);
Json coeff_to_json(const Coeff& c);

/// A group name or {"table": ..., "labels": ...}.
GroupPtr finite_group_from(const Json& j);
Json finite_group_to_json(const FiniteGroup& g);

/// {"named": "S4"}, {"generators": [[...]], "degree": d}, or
/// {"group": <group>, "table": [[g·x]]}.
FiniteAction action_from(const Json& j);

Json to_json(const RationalSum& y);
RationalSum rational_sum_from(const CoeffGroup& g, const Json& j);
Json to_json(const NatSum& y);
NatSum nat_sum_from(const CoeffGroup& g, const Json& j);

Json to_json(const Element& e);
Element element_from(const AmbientGroup& g, const Json& j);

Json to_json(const SetSpec& s);
SetSpec set_spec_from(const AmbientGroup& g, const Json& j);
Json to_json(const QTuple& t);
QTuple qtuple_from(const AmbientGroup& g, const Json& j);
Json to_json(const WordWitness& w);
WordWitness witness_from(const AmbientGroup& g, const Json& j);
Closure closure_from(const Json& j);
std::string closure_name(Closure c);

Json to_json(const NbhdSpec& s);
NbhdSpec nbhd_spec_from(const CoeffGroup& g, const Json& j);
Json to_json(const SeparationBundle& b);
SeparationBundle bundle_from(const CoeffGroup& g, const Json& j);

Json to_json(const CantorInstance& inst);
CantorInstance cantor_instance_from(const Json& j);
Json to_json(const CantorWitness& w);
CantorWitness cantor_witness_from(const Json& j);

Json to_json(const VerificationReport& r);
Json to_json(const IdentityResult& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const TauReport& r);

}  // namespace canontop::json_io
