#include <cstdio>
#include <sstream>

#include "json_util.hpp"
#include "tlo/errors.hpp"
#include "tlo/qubo.hpp"

namespace tlo {

using detail::json;
using detail::ordered_json;

namespace {

ordered_json variable_json(const VariableMap& map, const Instance& instance, std::size_t i) {
    const auto& role = map.entries[i];
    ordered_json v;
    v["index"] = i;
    switch (role.kind) {
        case VariableRole::Kind::Assignment:
            v["role"] = "x";
            v["container"] = instance.container(role.container).id;
            v["wagon"] = instance.wagon(role.wagon).id;
            v["slot"] = role.slot;
            break;
        case VariableRole::Kind::Config:
            v["role"] = "t";
            v["wagon"] = instance.wagon(role.wagon).id;
            v["config"] = role.config;
            break;
        case VariableRole::Kind::Slack:
            v["role"] = "slack";
            v["constraint"] = map.slacks[role.register_id].constraint;
            v["bit"] = role.bit;
            break;
    }
    return v;
}

}  // namespace

std::string export_qubo(const QuboModel& model, const VariableMap& map, const Instance& instance,
                        QuboFormat format) {
    if (format == QuboFormat::CoordinateText) {
        std::string out = "# qubo n=" + std::to_string(model.n) + " offset=" + std::to_string(model.offset) + "\n";
        for (const auto& [key, value] : model.coefficients) {
            out += std::to_string(key.first) + " " + std::to_string(key.second) + " " + std::to_string(value) + "\n";
        }
        return out;
    }

    ordered_json doc;
    doc["n"] = model.n;
    doc["offset"] = model.offset;
    ordered_json terms = ordered_json::array();
    for (const auto& [key, value] : model.coefficients) {
        terms.push_back(ordered_json::array({key.first, key.second, value}));
    }
    doc["terms"] = std::move(terms);
    ordered_json variables = ordered_json::array();
    for (std::size_t i = 0; i < map.entries.size(); ++i) variables.push_back(variable_json(map, instance, i));
    doc["variables"] = std::move(variables);
    ordered_json penalties = ordered_json::object();
    for (const auto& [family, p] : model.penalties) penalties[std::string(to_string(family))] = p;
    doc["penalties"] = std::move(penalties);
    doc["weight_unit"] = model.weight_unit;
    return doc.dump(2) + "\n";
}

QuboModel import_qubo(std::string_view content) {
    std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty QUBO document", 1, "");

    QuboModel model;
    if (content[first] == '#') {
        std::istringstream in{std::string(content)};
        std::string line;
        std::size_t line_no = 0;
        bool header = false;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            if (!header) {
                unsigned long long n = 0;
                long long offset = 0;
                if (std::sscanf(line.c_str(), "# qubo n=%llu offset=%lld", &n, &offset) != 2) {
                    throw ParseError("line " + std::to_string(line_no) + ": bad header", line_no, "");
                }
                model.n = n;
                model.offset = offset;
                header = true;
                continue;
            }
            std::istringstream row(line);
            std::size_t i = 0, j = 0;
            long long value = 0;
            std::string extra;
            if (!(row >> i >> j >> value) || (row >> extra) || i > j || j >= model.n) {
                throw ParseError("line " + std::to_string(line_no) + ": bad term", line_no, "");
            }
            model.coefficients[{i, j}] += value;
        }
        return model;
    }

    const json doc = detail::parse_document(content);
    detail::expect_object(doc, "", {"n", "offset", "terms", "variables", "penalties"}, {"weight_unit"});
    model.n = static_cast<std::size_t>(detail::as_int(doc["n"], "n"));
    model.offset = detail::as_int(doc["offset"], "offset");
    const auto& terms = detail::as_array(doc["terms"], "terms");
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string path = detail::element("terms", t);
        const auto& term = detail::as_array(terms[t], path);
        if (term.size() != 3) detail::schema_error(path, "expected [i, j, value]");
        const auto i = detail::as_int(term[0], path);
        const auto j = detail::as_int(term[1], path);
        if (i < 0 || i > j || static_cast<std::size_t>(j) >= model.n) detail::schema_error(path, "bad index");
        model.coefficients[{static_cast<std::size_t>(i), static_cast<std::size_t>(j)}] +=
            detail::as_int(term[2], path);
    }
    for (const auto& [key, value] : doc["penalties"].items()) {
        for (auto f : {PenaltyFamily::AssignOnce, PenaltyFamily::SlotOnce, PenaltyFamily::OneConfig,
                       PenaltyFamily::SlotWeight, PenaltyFamily::WagonWeight, PenaltyFamily::TrainWeight}) {
            if (key == to_string(f)) model.penalties[f] = detail::as_int(value, "penalties." + key);
        }
    }
    if (doc.contains("weight_unit")) model.weight_unit = detail::as_int(doc["weight_unit"], "weight_unit");
    return model;
}

}  // namespace tlo
