#include "tlo/solution_io.hpp"

#include "json_util.hpp"
#include "solution_json.hpp"

namespace tlo {

using detail::as_array;
using detail::as_int;
using detail::as_string;
using detail::child;
using detail::element;
using detail::expect_object;
using detail::json;
using detail::ordered_json;

ParsedSolution parse_solution(const Instance& instance, std::string_view content) {
    const json doc = detail::parse_document(content);
    expect_object(doc, "", {"assignments", "configs"});

    ParsedSolution parsed{Solution::empty(instance), {}};
    std::vector<int> config_entries(instance.wagon_count(), 0);

    auto resolve_wagon = [&](const std::string& id) {
        const auto w = instance.find_wagon(id);
        if (!w) throw DanglingReference("unknown wagon '" + id + "'");
        return *w;
    };

    const auto& assignments = as_array(doc["assignments"], "assignments");
    std::vector<bool> reported(instance.container_count(), false);
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const std::string path = element("assignments", i);
        const json& a = assignments[i];
        expect_object(a, path, {"container", "wagon", "slot"});
        const std::string cid = as_string(a["container"], child(path, "container"));
        const auto c = instance.find_container(cid);
        if (!c) throw DanglingReference("unknown container '" + cid + "'");
        const std::size_t w = resolve_wagon(as_string(a["wagon"], child(path, "wagon")));
        const auto slot = as_int(a["slot"], child(path, "slot"));
        if (slot < 0 || static_cast<std::size_t>(slot) >= instance.wagon(w).slots.size()) {
            throw DanglingReference("wagon '" + instance.wagon(w).id + "' has no slot " +
                                    std::to_string(slot));
        }
        if (parsed.solution.placement[*c]) {
            if (!reported[*c]) {
                parsed.violations.push_back(
                    {ViolationKind::MultipleAssignment, {cid}, std::nullopt});
                reported[*c] = true;
            }
            continue;
        }
        parsed.solution.placement[*c] = Placement{w, static_cast<std::size_t>(slot)};
    }

    const auto& configs = as_array(doc["configs"], "configs");
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const std::string path = element("configs", i);
        const json& b = configs[i];
        expect_object(b, path, {"wagon", "config"});
        const std::size_t w = resolve_wagon(as_string(b["wagon"], child(path, "wagon")));
        const auto index = as_int(b["config"], child(path, "config"));
        if (index < 0 || static_cast<std::size_t>(index) >= instance.wagon(w).configs.size()) {
            throw DanglingReference("wagon '" + instance.wagon(w).id + "' has no configuration " +
                                    std::to_string(index));
        }
        if (++config_entries[w] == 1) {
            parsed.solution.config[w] = static_cast<std::size_t>(index);
        }
    }
    // Exactly one configuration per wagon: several entries count as a
    // violation too. Wagons with none are reported by check_feasibility.
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        if (config_entries[w] > 1) {
            parsed.violations.push_back({ViolationKind::NoConfig, {instance.wagon(w).id}, std::nullopt});
        }
    }
    return parsed;
}

namespace detail {

ordered_json solution_to_json(const Instance& instance, const Solution& solution) {
    ordered_json doc;
    ordered_json assignments = ordered_json::array();
    for (std::size_t c = 0; c < solution.placement.size(); ++c) {
        const auto& p = solution.placement[c];
        if (!p) continue;
        ordered_json a;
        a["container"] = instance.container(c).id;
        a["wagon"] = instance.wagon(p->wagon).id;
        a["slot"] = p->slot;
        assignments.push_back(std::move(a));
    }
    doc["assignments"] = std::move(assignments);
    ordered_json configs = ordered_json::array();
    for (std::size_t w = 0; w < solution.config.size(); ++w) {
        if (!solution.config[w]) continue;
        ordered_json b;
        b["wagon"] = instance.wagon(w).id;
        b["config"] = *solution.config[w];
        configs.push_back(std::move(b));
    }
    doc["configs"] = std::move(configs);
    return doc;
}

}  // namespace detail

std::string serialize_solution(const Instance& instance, const Solution& solution) {
    validate_references(instance, solution);
    return detail::solution_to_json(instance, solution).dump(2) + "\n";
}

}  // namespace tlo
