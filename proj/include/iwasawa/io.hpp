#pragma once

#include <string>

#include <json.hpp>

#include "iwasawa/selmer_gate.hpp"

namespace iwasawa::io {

using nlohmann::json;

// Documents use decimal strings for coefficients and canonical residues
// throughout; trailing zero coefficients are omitted on output and implied
// on input. Structural problems raise ParseError.

json series_to_json(const IwasawaSeries& s);
IwasawaSeries series_from_json(const json& j);

json scalar_to_json(const PadicNumber& x);
PadicNumber scalar_from_json(const json& j, const PadicContext& ctx);

json matrix_to_json(const LambdaMatrix& m);
LambdaMatrix matrix_from_json(const json& j);

json image_spec_to_json(const SignedImageSpec& spec);
SignedImageSpec image_spec_from_json(const json& j, const PadicContext& ctx);

json probe_to_json(const IrreducibleProbe& p);
IrreducibleProbe probe_from_json(const json& j);

json scenario_to_json(const GateScenario& s);
GateScenario scenario_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j, bool pretty);

} // namespace iwasawa::io
