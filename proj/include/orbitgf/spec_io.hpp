#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orbitgf/constructions.hpp"

namespace orbitgf {

/// GroupSpec <-> JSON. Parse errors are Error{SpecParse} whose message starts
/// with the JSON path of the offending value, e.g. "$.conjugates[1].word[0]".
/// Wherever a spec is expected, a string is read as a named reference.
GroupSpec spec_from_json(const nlohmann::json& j, const std::string& path = "$");
nlohmann::json spec_to_json(const GroupSpec& spec);

GroupSpec parse_spec_text(std::string_view text);
GroupSpec load_spec_file(const std::filesystem::path& file);

/// Named references:
///   trivial, cyclic:N, dihedral:N, quaternion:N, semidihedral:N,
///   extraspecial:P:ORDER (":two" for the p = 2 type), stem:FAMILY:P,
///   and every built-in catalog name.
GroupSpec named_spec(const std::string& name);

/// Built-in catalog names, in catalog order.
const std::vector<std::string>& builtin_names();

/// Contents of the files under specs/, compiled into the library and keyed
/// by path relative to specs/ ("G54_6.json", "stems/Phi5_p3.json").
const std::map<std::string, std::string>& embedded_spec_files();

/// Two-space indented dump with a trailing newline; keys are sorted, so equal
/// values serialize to identical bytes.
std::string canonical_dump(const nlohmann::json& j);

/// Writes to a temporary file in the same directory and renames it over the
/// target.
void write_file_atomic(const std::filesystem::path& file, const std::string& contents);

}  // namespace orbitgf
