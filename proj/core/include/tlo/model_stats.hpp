#pragma once

#include <cstdint>
#include <string>

#include "tlo/instance.hpp"

namespace tlo {

enum class ModelKind { A, B };

struct VariableCounts {
    std::int64_t assignment = 0;  // x: length-compatible (container, wagon, slot)
    std::int64_t config = 0;      // t: (wagon, configuration)
    std::int64_t rehandle = 0;    // y: (container, wagon), conventional model only

    std::int64_t total() const { return assignment + config + rehandle; }
};

struct ConstraintCounts {
    std::int64_t assign_once = 0;    // each container at most once
    std::int64_t slot_once = 0;      // each slot at most one container
    std::int64_t one_config = 0;     // exactly one configuration per wagon
    std::int64_t slot_weight = 0;    // slot load within the chosen configuration
    std::int64_t wagon_weight = 0;
    std::int64_t train_weight = 0;
    std::int64_t rehandle_link = 0;  // big-M rows, one per (blocking pair, wagon)

    std::int64_t total() const {
        return assign_once + slot_once + one_config + slot_weight + wagon_weight + train_weight +
               rehandle_link;
    }
};

struct ModelStats {
    ModelKind model = ModelKind::B;
    VariableCounts vars;
    ConstraintCounts constraints;
};

// Compact model: assignment and configuration variables only.
ModelStats count_model_b(const Instance& instance);

// Conventional model: adds y = |C| * |W| rehandle variables and one big-M
// row per blocking pair and wagon.
ModelStats count_model_a(const Instance& instance);

struct ModelComparison {
    ModelStats a;
    ModelStats b;
    double var_reduction_pct = 0.0;         // 100 * (1 - B / A)
    double constraint_reduction_pct = 0.0;
};

ModelComparison compare_models(const Instance& instance);

std::string comparison_markdown(const ModelComparison& cmp);
std::string comparison_json(const ModelComparison& cmp);

}  // namespace tlo
