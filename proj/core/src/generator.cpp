#include "tlo/generator.hpp"

#include <algorithm>
#include <string>

#include "tlo/errors.hpp"
#include "tlo/rng.hpp"

namespace tlo {
namespace {

void validate(const GeneratorSpec& spec) {
    auto fail = [](const std::string& what) {
        throw InvariantError("infeasible generator spec: " + what);
    };
    if (spec.tiers < 1) fail("tiers must be at least 1");
    if (spec.containers < 0) fail("negative container count");
    if (spec.wagons < 1) fail("at least one wagon is required");
    if (spec.total_teu < spec.containers || spec.total_teu > 2 * spec.containers) {
        fail("total_teu must lie in [containers, 2 * containers]");
    }
    if (spec.train_teu < spec.wagons) fail("every wagon needs at least one TEU of slots");
}

// 90%, rounded down.
Mass ninety_percent(Mass m) { return m * 9 / 10; }

}  // namespace

Instance generate_instance(const GeneratorSpec& spec, const PayloadRanges& ranges) {
    validate(spec);

    const Rng root(spec.seed);
    Rng length_stream = root.split(0);
    Rng container_stream = root.split(1);
    Rng wagon_stream = root.split(2);

    InstanceData data;
    data.rehandle_unit_cost = ranges.rehandle_unit_cost;
    data.max_tiers = spec.tiers;

    const int forty_foot = spec.total_teu - spec.containers;
    std::vector<ContainerLength> lengths(static_cast<std::size_t>(spec.containers),
                                         ContainerLength::TwentyFoot);
    std::fill_n(lengths.begin(), forty_foot, ContainerLength::FortyFoot);
    length_stream.shuffle(std::span<ContainerLength>(lengths));

    for (int i = 0; i < spec.containers; ++i) {
        Container c;
        c.id = "c" + std::to_string(i);
        c.length = lengths[static_cast<std::size_t>(i)];
        c.weight = container_stream.uniform_int(ranges.weight_min, ranges.weight_max);
        c.value = container_stream.uniform_int(ranges.value_min, ranges.value_max);
        if (i % spec.tiers == 0) data.stacks.emplace_back();
        data.stacks.back().push_back(c.id);
        data.containers.push_back(std::move(c));
    }

    Mass train_capacity = 0;
    for (int w = 0; w < spec.wagons; ++w) {
        const int share = spec.train_teu / spec.wagons + (w < spec.train_teu % spec.wagons ? 1 : 0);
        Wagon wagon;
        wagon.id = "w" + std::to_string(w);
        wagon.slots.assign(static_cast<std::size_t>(share / 2), Slot{ContainerLength::FortyFoot});
        if (share % 2 == 1) wagon.slots.push_back(Slot{ContainerLength::TwentyFoot});

        std::vector<Mass> best(wagon.slots.size(), 0);
        for (int b = 0; b < ranges.configs_per_wagon; ++b) {
            WeightConfig config;
            for (std::size_t s = 0; s < wagon.slots.size(); ++s) {
                const Mass limit =
                    wagon_stream.uniform_int(ranges.slot_limit_min, ranges.slot_limit_max);
                config.per_slot_max.push_back(limit);
                best[s] = std::max(best[s], limit);
            }
            wagon.configs.push_back(std::move(config));
        }
        Mass sum = 0;
        for (Mass m : best) sum += m;
        wagon.max_weight = ninety_percent(sum);
        train_capacity += wagon.max_weight;
        data.wagons.push_back(std::move(wagon));
    }
    data.train_max_weight = ninety_percent(train_capacity);

    return Instance(std::move(data));
}

}  // namespace tlo
