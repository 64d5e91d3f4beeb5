#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

namespace alekit {

using ordered_json = nlohmann::ordered_json;

// Renders JSON with insertion-ordered keys, two-space indentation and numbers
// in round-trip decimal form (up to 17 significant digits). parse() of the
// output followed by write_json() reproduces the bytes exactly, which is what
// pins the emitted files down for determinism checks.
void write_json(const ordered_json& j, std::ostream& out);
std::string json_text(const ordered_json& j);

}  // namespace alekit
