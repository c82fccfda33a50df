#pragma once

#include <cstdint>

#include "tlo/instance.hpp"

namespace tlo {

// Shape of a generated instance: cont / wagons / tiers / train TEU / total TEU.
struct GeneratorSpec {
    int containers = 0;
    int wagons = 1;
    int tiers = 1;
    int train_teu = 1;
    int total_teu = 0;
    std::uint64_t seed = 0;
};

// Distributions used for the payload (everything the shape does not fix).
struct PayloadRanges {
    Mass weight_min = 2000;
    Mass weight_max = 30000;
    Money value_min = 1;
    Money value_max = 20;
    int configs_per_wagon = 2;
    Mass slot_limit_min = 10000;
    Mass slot_limit_max = 36000;
    Money rehandle_unit_cost = 1;
};

// Deterministic in `spec` (seed included) on every platform.
//
// Containers c0..c{n-1} fill stacks bottom-up in index order, T per stack;
// exactly total_teu - containers of them are 40' (positions shuffled).
// Train TEUs are split over wagons as evenly as possible (earlier wagons
// take the remainder) and each wagon's share is laid out as 40' slots
// first, then at most one 20' slot. Wagon capacity is 90% of the sum of
// per-slot maxima over configurations, the train capacity 90% of the sum of
// wagon capacities, both rounded down.
//
// Throws InvariantError when the shape is infeasible.
Instance generate_instance(const GeneratorSpec& spec, const PayloadRanges& ranges = {});

}  // namespace tlo
