#pragma once

// Schema helpers shared by the JSON readers. Not installed.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tlo/errors.hpp"

namespace tlo::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline std::size_t line_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw ParseError("field '" + path + "': " + what, 0, path);
}

inline json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("line " + std::to_string(line) + ": " + e.what(), line, "");
    }
}

inline void expect_object(const json& j, const std::string& path,
                          std::initializer_list<std::string_view> required,
                          std::initializer_list<std::string_view> optional = {}) {
    if (!j.is_object()) schema_error(path.empty() ? "$" : path, "expected an object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (auto k : required) known = known || key == k;
        for (auto k : optional) known = known || key == k;
        if (!known) schema_error(path.empty() ? key : path + "." + key, "unknown key");
    }
    for (auto k : required) {
        if (!j.contains(std::string(k))) {
            schema_error(path.empty() ? std::string(k) : path + "." + std::string(k),
                         "missing required key");
        }
    }
}

inline std::string child(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline std::string element(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

inline std::int64_t as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    return j.get<std::int64_t>();
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) schema_error(path, "expected a string");
    return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array");
    return j;
}

}  // namespace tlo::detail
