#pragma once

#include <string>

#include <json.hpp>

#include "stratakit/bifurcation3.hpp"
#include "stratakit/modulus.hpp"

namespace stratakit {

using json = nlohmann::json;

json to_json(const RealPolyField& P);
RealPolyField poly_from_json(const json& j);

json to_json(const NonXInvolution& tau);
NonXInvolution involution_from_json(const json& j);

json to_json(const Modulus& mod);
Modulus modulus_from_json(const json& j);

json to_json(const K3Label& label);
json to_json(const K3Sample& sample);

/// Diagnostic dump: one JSON line per separatrix polyline.
std::string trace_dump(const FieldAnalysis& fa);

/// Parse with a uniform diagnostic (throws InvalidInputError).
json parse_json(const std::string& text, const std::string& what);

} // namespace stratakit
