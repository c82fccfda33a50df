#include "tlo/evaluation.hpp"

#include <algorithm>
#include <sstream>

#include "json_util.hpp"
#include "tlo/errors.hpp"

namespace tlo {
namespace {

// Walks every hard constraint in a fixed order, appending violations. With
// `first_only` it stops at the first one.
std::vector<Violation> scan(const Instance& instance, const Solution& solution, bool first_only) {
    std::vector<Violation> out;
    auto done = [&] { return first_only && !out.empty(); };

    const auto& containers = instance.containers();
    const auto& wagons = instance.wagons();

    // Length compatibility.
    for (std::size_t c = 0; c < containers.size(); ++c) {
        const auto& p = solution.placement[c];
        if (!p) continue;
        if (containers[c].length != wagons[p->wagon].slots[p->slot].length) {
            out.push_back({ViolationKind::LengthMismatch,
                           {containers[c].id, wagons[p->wagon].id, std::to_string(p->slot)},
                           std::nullopt});
            if (done()) return out;
        }
    }

    // Slot occupancy and loads.
    std::vector<std::vector<std::size_t>> occupants(instance.total_slots());
    std::vector<Mass> wagon_load(wagons.size(), 0);
    Mass train_load = 0;
    for (std::size_t c = 0; c < containers.size(); ++c) {
        const auto& p = solution.placement[c];
        if (!p) continue;
        occupants[instance.slot_offset(p->wagon) + p->slot].push_back(c);
        wagon_load[p->wagon] += containers[c].weight;
        train_load += containers[c].weight;
    }

    for (std::size_t w = 0; w < wagons.size(); ++w) {
        for (std::size_t s = 0; s < wagons[w].slots.size(); ++s) {
            const auto& occ = occupants[instance.slot_offset(w) + s];
            if (occ.size() > 1) {
                std::vector<std::string> subject{wagons[w].id, std::to_string(s)};
                for (std::size_t c : occ) subject.push_back(containers[c].id);
                out.push_back({ViolationKind::SlotOccupiedTwice, std::move(subject), std::nullopt});
                if (done()) return out;
            }
        }
    }

    for (std::size_t w = 0; w < wagons.size(); ++w) {
        if (!solution.config[w]) {
            out.push_back({ViolationKind::NoConfig, {wagons[w].id}, std::nullopt});
            if (done()) return out;
        }
    }

    for (std::size_t w = 0; w < wagons.size(); ++w) {
        if (!solution.config[w]) continue;
        const auto& limits = wagons[w].configs[*solution.config[w]].per_slot_max;
        for (std::size_t s = 0; s < wagons[w].slots.size(); ++s) {
            Mass load = 0;
            for (std::size_t c : occupants[instance.slot_offset(w) + s]) load += containers[c].weight;
            if (load > limits[s]) {
                out.push_back({ViolationKind::SlotOverweight,
                               {wagons[w].id, std::to_string(s)},
                               load - limits[s]});
                if (done()) return out;
            }
        }
    }

    for (std::size_t w = 0; w < wagons.size(); ++w) {
        if (wagon_load[w] > wagons[w].max_weight) {
            out.push_back({ViolationKind::WagonOverweight,
                           {wagons[w].id},
                           wagon_load[w] - wagons[w].max_weight});
            if (done()) return out;
        }
    }

    if (train_load > instance.train_max_weight()) {
        out.push_back({ViolationKind::TrainOverweight,
                       {"train"},
                       train_load - instance.train_max_weight()});
    }
    return out;
}

void require_feasible(const Instance& instance, const Solution& solution) {
    validate_references(instance, solution);
    const auto violations = scan(instance, solution, true);
    if (!violations.empty()) {
        throw InfeasibleSolution("plan is infeasible: " + describe(violations.front()));
    }
}

}  // namespace

Solution Solution::empty(const Instance& instance) {
    Solution s;
    s.placement.assign(instance.container_count(), std::nullopt);
    s.config.assign(instance.wagon_count(), std::nullopt);
    return s;
}

Solution Solution::unloaded(const Instance& instance, std::size_t config_index) {
    Solution s = empty(instance);
    for (auto& b : s.config) b = config_index;
    return s;
}

std::size_t Solution::loaded_count() const {
    return static_cast<std::size_t>(
        std::count_if(placement.begin(), placement.end(), [](const auto& p) { return p.has_value(); }));
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::MultipleAssignment: return "MultipleAssignment";
        case ViolationKind::SlotOccupiedTwice: return "SlotOccupiedTwice";
        case ViolationKind::NoConfig: return "NoConfig";
        case ViolationKind::SlotOverweight: return "SlotOverweight";
        case ViolationKind::WagonOverweight: return "WagonOverweight";
        case ViolationKind::TrainOverweight: return "TrainOverweight";
        case ViolationKind::LengthMismatch: return "LengthMismatch";
    }
    return "Unknown";
}

std::string describe(const Violation& violation) {
    std::ostringstream os;
    os << to_string(violation.kind);
    if (!violation.subject.empty()) {
        os << "(";
        for (std::size_t i = 0; i < violation.subject.size(); ++i) {
            os << (i ? ", " : "") << violation.subject[i];
        }
        os << ")";
    }
    if (violation.amount) os << " amount=" << *violation.amount;
    return os.str();
}

void validate_references(const Instance& instance, const Solution& solution) {
    if (solution.placement.size() != instance.container_count()) {
        throw DanglingReference("plan covers " + std::to_string(solution.placement.size()) +
                                " containers, instance has " +
                                std::to_string(instance.container_count()));
    }
    if (solution.config.size() != instance.wagon_count()) {
        throw DanglingReference("plan covers " + std::to_string(solution.config.size()) +
                                " wagons, instance has " + std::to_string(instance.wagon_count()));
    }
    for (std::size_t c = 0; c < solution.placement.size(); ++c) {
        const auto& p = solution.placement[c];
        if (!p) continue;
        if (p->wagon >= instance.wagon_count()) {
            throw DanglingReference("container '" + instance.container(c).id +
                                    "' assigned to unknown wagon index " + std::to_string(p->wagon));
        }
        if (p->slot >= instance.wagon(p->wagon).slots.size()) {
            throw DanglingReference("container '" + instance.container(c).id +
                                    "' assigned to unknown slot " + std::to_string(p->slot) +
                                    " of wagon '" + instance.wagon(p->wagon).id + "'");
        }
    }
    for (std::size_t w = 0; w < solution.config.size(); ++w) {
        const auto& b = solution.config[w];
        if (b && *b >= instance.wagon(w).configs.size()) {
            throw DanglingReference("wagon '" + instance.wagon(w).id + "' has no configuration " +
                                    std::to_string(*b));
        }
    }
}

std::vector<Violation> check_feasibility(const Instance& instance, const Solution& solution) {
    validate_references(instance, solution);
    return scan(instance, solution, false);
}

bool is_feasible(const Instance& instance, const Solution& solution) {
    return scan(instance, solution, true).empty();
}

std::vector<std::int64_t> compact_rehandles_by_container(const Instance& instance,
                                                         const Solution& solution) {
    std::vector<std::int64_t> out(instance.container_count(), 0);
    const std::size_t wagons = instance.wagon_count();

    // loaded_by(c, w): container c is loaded at some wagon h <= w.
    auto loaded_by = [&](std::size_t c, std::size_t w) {
        const auto& p = solution.placement[c];
        return p && p->wagon <= w;
    };

    for (const auto& stack : instance.stacks()) {
        const std::size_t height = stack.size();
        for (std::size_t w = 0; w < wagons; ++w) {
            for (std::size_t l = 0; l < height; ++l) {
                const std::size_t c = stack[l];
                const auto& p = solution.placement[c];
                // First-time loading indicator: on wagon w and not on any earlier one.
                const bool first_at_w = p && p->wagon == w;
                if (!first_at_w) continue;
                std::int64_t blockers = static_cast<std::int64_t>(height - 1 - l);
                for (std::size_t a = l + 1; a < height; ++a) {
                    if (loaded_by(stack[a], w)) --blockers;
                }
                out[c] += blockers;
            }
        }
    }
    return out;
}

std::int64_t count_rehandles_compact(const Instance& instance, const Solution& solution) {
    require_feasible(instance, solution);
    const auto per_container = compact_rehandles_by_container(instance, solution);
    std::int64_t total = 0;
    for (auto r : per_container) total += r;
    return total;
}

Money objective_shifted(const Instance& instance, const Solution& solution) {
    const auto per_container = compact_rehandles_by_container(instance, solution);
    Money total = 0;
    for (std::size_t c = 0; c < per_container.size(); ++c) {
        total += instance.rehandle_unit_cost() * per_container[c];
        if (solution.placement[c]) total -= instance.container(c).value;
    }
    return total;
}

LoadingSimulation simulate_loading(const Instance& instance, const Solution& solution,
                                   RestackPolicy policy) {
    require_feasible(instance, solution);

    LoadingSimulation sim;
    std::vector<std::vector<std::size_t>> yard = instance.stacks();
    std::vector<bool> in_buffer(instance.container_count(), false);

    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        std::vector<std::size_t> targets;
        for (std::size_t c = 0; c < instance.container_count(); ++c) {
            if (solution.placement[c] && solution.placement[c]->wagon == w) targets.push_back(c);
        }
        std::sort(targets.begin(), targets.end(), [&](std::size_t a, std::size_t b) {
            const auto pa = instance.position(a);
            const auto pb = instance.position(b);
            if (pa.stack != pb.stack) return pa.stack < pb.stack;
            return pa.tier > pb.tier;
        });

        for (std::size_t target : targets) {
            const std::size_t k = instance.position(target).stack;
            const Placement dest = *solution.placement[target];

            if (in_buffer[target]) {
                in_buffer[target] = false;
                sim.events.push_back({CraneEvent::Op::Load, target, w, k, 0, dest.slot, true});
                continue;
            }

            auto& stack = yard[k];
            const auto it = std::find(stack.begin(), stack.end(), target);
            const std::size_t depth = static_cast<std::size_t>(it - stack.begin());

            std::vector<std::size_t> lifted;
            while (stack.size() > depth + 1) {
                const std::size_t top = stack.back();
                const auto& top_dest = solution.placement[top];
                // Anything bound for this or an earlier wagon was already taken.
                if (top_dest && top_dest->wagon <= w) {
                    throw std::logic_error("simulate_loading: retrieval order broken");
                }
                sim.events.push_back({CraneEvent::Op::Lift, top, w, k, stack.size() - 1, std::nullopt, false});
                ++sim.rehandles;
                lifted.push_back(top);
                stack.pop_back();
            }
            sim.events.push_back({CraneEvent::Op::Load, target, w, k, depth, dest.slot, false});
            stack.pop_back();

            for (auto rit = lifted.rbegin(); rit != lifted.rend(); ++rit) {
                if (policy == RestackPolicy::InPlace) {
                    stack.push_back(*rit);
                    sim.events.push_back({CraneEvent::Op::Restack, *rit, w, k, stack.size() - 1, std::nullopt, false});
                } else {
                    in_buffer[*rit] = true;
                }
            }
        }
    }
    return sim;
}

std::string events_to_json_lines(const Instance& instance, const std::vector<CraneEvent>& events) {
    std::string out;
    for (const auto& e : events) {
        detail::ordered_json j;
        switch (e.op) {
            case CraneEvent::Op::Lift: j["op"] = "lift"; break;
            case CraneEvent::Op::Load: j["op"] = "load"; break;
            case CraneEvent::Op::Restack: j["op"] = "restack"; break;
        }
        j["container"] = instance.container(e.container).id;
        j["wagon"] = instance.wagon(e.wagon).id;
        j["stack"] = e.stack;
        if (e.op == CraneEvent::Op::Load) {
            j["slot"] = *e.slot;
            j["from_buffer"] = e.from_buffer;
            if (!e.from_buffer) j["tier"] = e.tier;
        } else {
            j["tier"] = e.tier;
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

EvaluationReport evaluate(const Instance& instance, const Solution& solution) {
    EvaluationReport report;
    report.violations = check_feasibility(instance, solution);

    const auto per_container = compact_rehandles_by_container(instance, solution);
    int loaded_teu = 0;
    for (std::size_t c = 0; c < per_container.size(); ++c) {
        report.rehandles += per_container[c];
        if (solution.placement[c]) {
            report.value_loaded += instance.container(c).value;
            loaded_teu += teu(instance.container(c).length);
        }
    }
    report.total_value = instance.total_value();
    report.rehandle_cost = instance.rehandle_unit_cost() * report.rehandles;
    report.objective_shifted = report.rehandle_cost - report.value_loaded;
    report.objective_paper = report.objective_shifted + report.total_value;

    std::vector<bool> occupied(instance.total_slots(), false);
    for (const auto& p : solution.placement) {
        if (p) occupied[instance.slot_offset(p->wagon) + p->slot] = true;
    }
    const auto occupied_slots = std::count(occupied.begin(), occupied.end(), true);

    auto pct = [](double num, double den) { return den > 0 ? 100.0 * num / den : 0.0; };
    report.slot_utilization_pct =
        pct(static_cast<double>(occupied_slots), static_cast<double>(instance.total_slots()));
    report.teu_utilization_pct =
        pct(loaded_teu, static_cast<double>(instance.total_container_teu()));
    report.value_pct = report.total_value == 0
                           ? 100.0
                           : pct(static_cast<double>(report.value_loaded),
                                 static_cast<double>(report.total_value));
    return report;
}

}  // namespace tlo
