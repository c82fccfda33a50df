#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "tlo/instance.hpp"

namespace tlo::testing {

inline Container box(std::string id, int teu_count, Mass weight, Money value) {
    return Container{std::move(id),
                     teu_count == 2 ? ContainerLength::FortyFoot : ContainerLength::TwentyFoot, weight,
                     value};
}

// One configuration per entry of `limits`; each entry lists per-slot maxima.
inline Wagon wagon(std::string id, std::initializer_list<int> slot_teu,
                   std::vector<std::vector<Mass>> limits, Mass max_weight) {
    Wagon w;
    w.id = std::move(id);
    for (int t : slot_teu) {
        w.slots.push_back(Slot{t == 2 ? ContainerLength::FortyFoot : ContainerLength::TwentyFoot});
    }
    for (auto& l : limits) w.configs.push_back(WeightConfig{std::move(l)});
    w.max_weight = max_weight;
    return w;
}

// Single stack "c0".."c{n-1}" of 20' boxes (bottom first), one wagon with
// `slots` 20' slots and one roomy configuration.
inline InstanceData single_stack(int height, int slots, Money alpha = 1) {
    InstanceData d;
    d.rehandle_unit_cost = alpha;
    d.max_tiers = height;
    d.train_max_weight = 1'000'000;
    std::vector<std::string> stack;
    for (int i = 0; i < height; ++i) {
        const std::string id = "c" + std::to_string(i);
        d.containers.push_back(box(id, 1, 10'000, 10 + i));
        stack.push_back(id);
    }
    d.stacks.push_back(stack);
    std::vector<Mass> limits(static_cast<std::size_t>(slots), 50'000);
    Wagon w;
    w.id = "w0";
    w.slots.assign(static_cast<std::size_t>(slots), Slot{ContainerLength::TwentyFoot});
    w.configs.push_back(WeightConfig{limits});
    w.max_weight = 1'000'000;
    d.wagons.push_back(w);
    return d;
}

// Three 20' boxes (a under b, c alone), one wagon with two 20' slots and a
// single configuration. Masses are multiples of 1000 kg so that at
// weight_unit 1000 the QUBO has exactly 20 variables.
inline InstanceData reduced_qubo_instance() {
    InstanceData d;
    d.rehandle_unit_cost = 2;
    d.max_tiers = 2;
    d.train_max_weight = 3000;
    d.containers = {box("a", 1, 1000, 5), box("b", 1, 2000, 1), box("c", 1, 2000, 4)};
    d.stacks = {{"a", "b"}, {"c"}};
    d.wagons = {wagon("w", {1, 1}, {{2000, 2000}}, 3000)};
    return d;
}

}  // namespace tlo::testing
