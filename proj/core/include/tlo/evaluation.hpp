#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlo/instance.hpp"

namespace tlo {

struct Placement {
    std::size_t wagon = 0;
    std::size_t slot = 0;

    bool operator==(const Placement&) const = default;
    auto operator<=>(const Placement&) const = default;
};

// A loading plan: where each container goes (if anywhere) and which weight
// configuration each wagon runs. Indexed by container / wagon index.
//
// Because placement is keyed by container, a container can never be
// assigned twice in memory; MultipleAssignment is only reported when a plan
// file lists the same container more than once.
struct Solution {
    std::vector<std::optional<Placement>> placement;
    std::vector<std::optional<std::size_t>> config;

    // Nothing loaded, no configuration chosen.
    static Solution empty(const Instance& instance);
    // Nothing loaded, configuration `config_index` on every wagon.
    static Solution unloaded(const Instance& instance, std::size_t config_index = 0);

    std::size_t loaded_count() const;

    bool operator==(const Solution&) const = default;
};

enum class ViolationKind {
    MultipleAssignment,
    SlotOccupiedTwice,
    NoConfig,
    SlotOverweight,
    WagonOverweight,
    TrainOverweight,
    LengthMismatch,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind = ViolationKind::NoConfig;
    std::vector<std::string> subject;
    std::optional<Mass> amount;  // overweight kinds only

    bool operator==(const Violation&) const = default;
};

std::string describe(const Violation& violation);

// Throws DanglingReference when the plan is sized for another instance or
// names a wagon / slot / configuration that does not exist.
void validate_references(const Instance& instance, const Solution& solution);

// Hard constraints: one container per slot, exactly one configuration per
// wagon, slot / wagon / train weight limits, and exact length match between
// container and slot. Empty result iff the plan is feasible.
std::vector<Violation> check_feasibility(const Instance& instance, const Solution& solution);

// Same test without building diagnostics. References are not validated.
bool is_feasible(const Instance& instance, const Solution& solution);

// Rehandles implied by the plan, computed from the assignment alone: for the
// container at tier l of a stack of height h that is first loaded at wagon
// w, (h - 1 - l) minus the containers above it loaded at wagons 0..w.
// Throws InfeasibleSolution for infeasible plans.
std::int64_t count_rehandles_compact(const Instance& instance, const Solution& solution);

// Per-container breakdown of the compact count (entry c = rehandles paid to
// retrieve c). No feasibility check.
std::vector<std::int64_t> compact_rehandles_by_container(const Instance& instance,
                                                         const Solution& solution);

// Objective without the constant total-value term:
// alpha * rehandles - value loaded. No feasibility check.
Money objective_shifted(const Instance& instance, const Solution& solution);

enum class RestackPolicy {
    // Blockers go back onto their stack once the target is out.
    InPlace,
    // Blockers stay in the buffer; later targets found there cost nothing.
    ParkInBuffer,
};

struct CraneEvent {
    enum class Op { Lift, Load, Restack };

    Op op = Op::Lift;
    std::size_t container = 0;
    std::size_t wagon = 0;  // wagon being served
    std::size_t stack = 0;
    std::size_t tier = 0;   // tier at the time of the move
    std::optional<std::size_t> slot;  // Load only
    bool from_buffer = false;         // Load only

    bool operator==(const CraneEvent&) const = default;
};

struct LoadingSimulation {
    std::int64_t rehandles = 0;
    std::vector<CraneEvent> events;
};

// Replays the crane: wagons in order; within a wagon, stacks in index order
// and targets top-down. Each container currently above a target is lifted
// to a buffer (one rehandle). Throws InfeasibleSolution for infeasible plans.
LoadingSimulation simulate_loading(const Instance& instance, const Solution& solution,
                                   RestackPolicy policy = RestackPolicy::InPlace);

// One JSON object per line.
std::string events_to_json_lines(const Instance& instance, const std::vector<CraneEvent>& events);

struct EvaluationReport {
    std::vector<Violation> violations;
    std::int64_t rehandles = 0;
    Money rehandle_cost = 0;
    Money value_loaded = 0;
    Money total_value = 0;
    Money objective_paper = 0;    // rehandle_cost + total_value - value_loaded
    Money objective_shifted = 0;  // rehandle_cost - value_loaded
    double slot_utilization_pct = 0.0;
    double teu_utilization_pct = 0.0;
    double value_pct = 0.0;

    bool feasible() const { return violations.empty(); }
};

// Objective fields come from the compact count, which is well defined for
// any in-range plan; for infeasible plans they are informational only.
EvaluationReport evaluate(const Instance& instance, const Solution& solution);

}  // namespace tlo
