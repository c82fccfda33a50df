#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tlo/evaluation.hpp"
#include "tlo/instance.hpp"

namespace tlo {

// Constraint families that enter the QUBO as squared penalties.
enum class PenaltyFamily : std::uint8_t {
    AssignOnce,   // sum_{w,s} x[c,w,s] + slack = 1
    SlotOnce,     // sum_c x[c,w,s] + slack = 1
    OneConfig,    // sum_b t[w,b] = 1 (no slack)
    SlotWeight,   // sum_c wt_c x[c,w,s] + slack = sum_b limit_b,s t[w,b]
    WagonWeight,  // sum_{c,s} wt_c x[c,w,s] + slack = cap_w
    TrainWeight,  // sum wt_c x + slack = cap
};

std::string_view to_string(PenaltyFamily family);

struct VariableRole {
    enum class Kind : std::uint8_t { Assignment, Config, Slack };

    Kind kind = Kind::Assignment;
    std::size_t container = 0;  // Assignment
    std::size_t wagon = 0;      // Assignment, Config
    std::size_t slot = 0;       // Assignment
    std::size_t config = 0;     // Config
    std::size_t register_id = 0;  // Slack: index into VariableMap::slacks
    std::size_t bit = 0;          // Slack: weight 2^bit
};

// Binary register holding the residual (bound - load) of one inequality,
// in weight units.
struct SlackRegister {
    PenaltyFamily family = PenaltyFamily::AssignOnce;
    std::string constraint;   // e.g. "slot_weight:w0:1"
    std::size_t subject = 0;  // container (AssignOnce) or wagon
    std::size_t slot = 0;     // SlotOnce / SlotWeight
    std::size_t first = 0;    // index of bit 0
    std::size_t width = 0;
};

struct VariableMap {
    std::vector<VariableRole> entries;  // entries[i] describes variable i
    std::vector<SlackRegister> slacks;
    Mass weight_unit = 100;

    std::optional<std::size_t> assignment_index(std::size_t container, std::size_t wagon,
                                                std::size_t slot) const;
    std::optional<std::size_t> config_index(std::size_t wagon, std::size_t config) const;

    // [container][train-wide slot] and [wagon][config]; -1 when absent.
    std::vector<std::vector<std::int64_t>> assignment_lookup;
    std::vector<std::vector<std::int64_t>> config_lookup;
    std::vector<std::size_t> slot_offsets;
};

// Energy(bits) = sum_{i <= j} coefficients[{i, j}] * bits_i * bits_j + offset.
// Diagonal entries are the linear terms.
struct QuboModel {
    std::size_t n = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> coefficients;
    std::int64_t offset = 0;
    std::map<PenaltyFamily, std::int64_t> penalties;
    Mass weight_unit = 100;
};

struct QuboOptions {
    // Masses are divided by this; capacities round down, container weights
    // round up, so a discretized-feasible plan is always feasible.
    Mass weight_unit = 100;
    // Uniform penalty replacing the default
    // alpha * |blocking pairs| + sum of values + 1.
    std::optional<std::int64_t> penalty;
    std::map<PenaltyFamily, std::int64_t> family_penalties;
    std::size_t max_slack_bits = 32;
};

struct QuboBuild {
    QuboModel model;
    VariableMap map;
};

std::int64_t default_penalty(const Instance& instance);

// The rehandle term uses sum_s x[c,w,s] as the "first loaded at w"
// indicator, which keeps every term at most quadratic and is exact whenever
// each container is assigned at most once. For every plan s that is
// feasible after discretization, energy_of(encode_solution(s)) equals
// objective_shifted(s): all penalty constants live in `offset` and cancel.
//
// Throws QuboError on slack overflow, arithmetic overflow, or a model with
// no variables at all.
QuboBuild build_qubo(const Instance& instance, const QuboOptions& options = {});

// Throws QuboError when bits.size() != model.n.
std::int64_t energy_of(const QuboModel& model, const std::vector<std::uint8_t>& bits);

// energy_of(bits with bit i flipped) - energy_of(bits), from the local field.
std::int64_t flip_delta(const QuboModel& model, const std::vector<std::uint8_t>& bits,
                        std::size_t i);

// Sets x / t bits from the plan and each slack register to its residual.
// Throws QuboError when a residual does not fit its register (plan
// infeasible at this weight unit) or a placement has no variable.
std::vector<std::uint8_t> encode_solution(const VariableMap& map, const Instance& instance,
                                          const Solution& solution);

// Inverse of encode_solution on x / t bits. A wagon whose t bits are not
// exactly one gets no configuration. Throws QuboError if a container has
// several x bits set.
Solution decode_solution(const VariableMap& map, const Instance& instance,
                         const std::vector<std::uint8_t>& bits);

enum class QuboFormat { CoordinateText, Json };

// CoordinateText: "# qubo n=<n> offset=<offset>" then "i j value" per term
// in (i, j) order. Json: {"n", "offset", "terms", "variables",
// "penalties", "weight_unit"}.
std::string export_qubo(const QuboModel& model, const VariableMap& map, const Instance& instance,
                        QuboFormat format);

// Reads either export format back (format detected from the first
// character). Variable roles are not reconstructed.
QuboModel import_qubo(std::string_view content);

}  // namespace tlo
