#pragma once

#include <string>

#include <json.hpp>

#include "gmtforms/forms.hpp"
#include "gmtforms/gmt.hpp"
#include "gmtforms/linalg.hpp"
#include "gmtforms/operators.hpp"
#include "gmtforms/spaces.hpp"
#include "gmtforms/verify.hpp"

namespace gmtforms {

using Json = nlohmann::ordered_json;

// Canonical text rendering: two-space indent, stable key order, one trailing
// newline. All emitters below produce byte-stable output for equal inputs.
std::string dump_json(const Json& j);

// Parses text, converting library exceptions into ParseError.
Json parse_json(const std::string& text);

Json descriptor_to_json(const FormSpaceDescriptor& desc);
FormSpaceDescriptor descriptor_from_json(const Json& j);

Json polyform_to_json(const PolyForm& f);
PolyForm polyform_from_json(const Json& j);

Json operator_to_json(const OperatorMatrix& op);

Json subspace_to_json(const Subspace& space);
Subspace subspace_from_json(const Json& j);

Json hodge_tuple_to_json(const HodgeTuple& tuple);
HodgeTuple hodge_tuple_from_json(const Json& j);

Json label_to_json(const HodgeLabel& label);

Json split_to_json(const PhiSplit& split);

Json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

}  // namespace gmtforms
