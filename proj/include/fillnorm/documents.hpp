#pragma once

#include <string>

#include <json.hpp>

#include "fillnorm/builtins.hpp"
#include "fillnorm/fv.hpp"

namespace fillnorm {
namespace documents {

// Every document carries {"version": 1}. Unknown fields are errors.
inline constexpr int kVersion = 1;

using Json = nlohmann::json;

GroupPtr parse_presentation(const Json& doc, const std::string& where);
SpecPtr parse_complex(const Json& doc, const std::string& where);
// source/target may be built-in complex names or inline complex documents
MapSpec parse_map(const Json& doc, const std::string& where);

Json load_document(const std::string& path);

// A complex reference: a built-in name, or a path to a complex document.
SpecPtr resolve_complex(const std::string& ref);

std::string rational_string(const Rational& r);  // "p" or "p/q"

Json chain_literal_json(const std::vector<ChainLiteralTerm>& terms);
Json certificate_json(const FillingCertificate& cert);
Json fv_table_json(const FVTable& table);
std::string fv_table_csv(const FVTable& table);  // k,value,status,mode,witness_id,radius,ms
Json operator_bound_json(const OperatorBound& b);
Json equivalence_json(const EquivalenceReport& r);
Json dehn_json(const DehnReport& r);
Json subgroup_json(const SubgroupCheckReport& r);
Json confluence_json(const ConfluenceReport& r, const GroupPresentation& p);

}  // namespace documents
}  // namespace fillnorm
