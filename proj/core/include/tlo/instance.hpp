#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tlo {

using Mass = std::int64_t;   // kilograms
using Money = std::int64_t;  // monetary units

enum class ContainerLength : std::uint8_t { TwentyFoot = 1, FortyFoot = 2 };

constexpr int teu(ContainerLength length) { return static_cast<int>(length); }

struct Container {
    std::string id;
    ContainerLength length = ContainerLength::TwentyFoot;
    Mass weight = 0;
    Money value = 0;

    bool operator==(const Container&) const = default;
};

struct Slot {
    ContainerLength length = ContainerLength::TwentyFoot;

    bool operator==(const Slot&) const = default;
};

// Per-slot weight limits; one entry per slot of the owning wagon.
struct WeightConfig {
    std::vector<Mass> per_slot_max;

    bool operator==(const WeightConfig&) const = default;
};

struct Wagon {
    std::string id;
    std::vector<Slot> slots;
    std::vector<WeightConfig> configs;
    Mass max_weight = 0;

    bool operator==(const Wagon&) const = default;
};

// Raw, unvalidated description of a problem, mirroring the file layout.
// Stacks list container ids bottom (tier 0) first. Wagons are loaded in
// list order.
struct InstanceData {
    Money rehandle_unit_cost = 1;
    Mass train_max_weight = 0;
    int max_tiers = 1;
    std::vector<Container> containers;
    std::vector<std::vector<std::string>> stacks;
    std::vector<Wagon> wagons;

    bool operator==(const InstanceData&) const = default;
};

struct StackPosition {
    std::size_t stack = 0;
    std::size_t tier = 0;

    bool operator==(const StackPosition&) const = default;
};

// Container indices below / above one another in the same stack.
struct BlockingPair {
    std::size_t below = 0;
    std::size_t above = 0;

    bool operator==(const BlockingPair&) const = default;
};

// Validated, immutable problem instance. Containers and wagons are
// addressed by dense indices (their position in InstanceData); string ids
// are kept for I/O.
class Instance {
public:
    // Throws InvariantError naming the violated invariant and offending id.
    explicit Instance(InstanceData data);

    const InstanceData& data() const { return data_; }

    const std::vector<Container>& containers() const { return data_.containers; }
    const std::vector<Wagon>& wagons() const { return data_.wagons; }
    const Container& container(std::size_t c) const { return data_.containers[c]; }
    const Wagon& wagon(std::size_t w) const { return data_.wagons[w]; }
    std::size_t container_count() const { return data_.containers.size(); }
    std::size_t wagon_count() const { return data_.wagons.size(); }

    // Stacks as container indices, bottom first.
    const std::vector<std::vector<std::size_t>>& stacks() const { return stacks_; }
    std::size_t stack_count() const { return stacks_.size(); }
    std::size_t stack_height(std::size_t k) const { return stacks_[k].size(); }
    int max_tiers() const { return data_.max_tiers; }

    Money rehandle_unit_cost() const { return data_.rehandle_unit_cost; }
    Mass train_max_weight() const { return data_.train_max_weight; }

    StackPosition position(std::size_t container) const { return positions_[container]; }

    std::optional<std::size_t> find_container(const std::string& id) const;
    std::optional<std::size_t> find_wagon(const std::string& id) const;

    std::size_t total_slots() const { return total_slots_; }
    // Offset of wagon w's first slot in a train-wide slot numbering.
    std::size_t slot_offset(std::size_t w) const { return slot_offsets_[w]; }

    int total_container_teu() const;
    int total_slot_teu() const;
    Money total_value() const;

    bool operator==(const Instance& other) const { return data_ == other.data_; }

private:
    InstanceData data_;
    std::vector<std::vector<std::size_t>> stacks_;
    std::vector<StackPosition> positions_;
    std::vector<std::size_t> slot_offsets_;
    std::size_t total_slots_ = 0;
    std::unordered_map<std::string, std::size_t> container_index_;
    std::unordered_map<std::string, std::size_t> wagon_index_;
};

// All (below, above) pairs sharing a stack, ordered by stack, then below
// tier, then above tier.
std::vector<BlockingPair> derive_blocking_pairs(const Instance& instance);

// Dense grid index T * stack + tier. Throws std::out_of_range for an
// unoccupied position.
std::size_t linear_index(const Instance& instance, std::size_t stack, std::size_t tier);

// Inverse of linear_index.
StackPosition grid_position(const Instance& instance, std::size_t index);

}  // namespace tlo
