#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tlo/instance.hpp"

namespace tlo {

// Parses the JSON instance format. Throws ParseError (syntax, schema,
// unknown keys) or InvariantError (well-formed but invalid data).
Instance load_instance(std::string_view content);

// Canonical serialization: fixed key order, 2-space indent, trailing
// newline. load_instance(serialize_instance(x)) == x and re-serializing is
// byte-identical.
std::string serialize_instance(const Instance& instance);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace tlo
