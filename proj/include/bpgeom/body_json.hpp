#pragma once

#include <string>

#include "bpgeom/body.hpp"
#include "json.hpp"

namespace bp {

using Json = nlohmann::json;

// Body specification {"n": int, "shape": string, "params": object}.
// Unknown keys anywhere in the spec are rejected with ParseError.
RadialBody body_from_json(const Json& spec);
Json body_to_json(const RadialBody& body);
RadialBody body_from_string(const std::string& text);
RadialBody load_body_file(const std::string& path);

// Deterministic rendering: sorted keys, doubles as %.12e, two-space indent.
std::string canonical_dump(const Json& value);

}  // namespace bp
