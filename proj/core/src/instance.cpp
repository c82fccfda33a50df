#include "tlo/instance.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "tlo/errors.hpp"

namespace tlo {
namespace {

[[noreturn]] void fail(const std::string& what) { throw InvariantError(what); }

std::string quoted(const std::string& id) { return "'" + id + "'"; }

}  // namespace

Instance::Instance(InstanceData data) : data_(std::move(data)) {
    if (data_.max_tiers < 1) {
        fail("max_tiers must be positive");
    }
    if (data_.rehandle_unit_cost < 0) {
        fail("negative rehandle unit cost");
    }
    if (data_.train_max_weight < 0) {
        fail("negative train max weight");
    }

    for (std::size_t c = 0; c < data_.containers.size(); ++c) {
        const Container& container = data_.containers[c];
        if (!container_index_.emplace(container.id, c).second) {
            fail("duplicate container id " + quoted(container.id));
        }
        if (container.weight < 0) {
            fail("negative weight for container " + quoted(container.id));
        }
        if (container.value < 0) {
            fail("negative value for container " + quoted(container.id));
        }
    }

    constexpr std::size_t kUnplaced = static_cast<std::size_t>(-1);
    positions_.assign(data_.containers.size(), StackPosition{kUnplaced, kUnplaced});
    stacks_.reserve(data_.stacks.size());
    for (std::size_t k = 0; k < data_.stacks.size(); ++k) {
        const auto& ids = data_.stacks[k];
        if (ids.size() > static_cast<std::size_t>(data_.max_tiers)) {
            fail("stack " + std::to_string(k) + " exceeds max_tiers (" +
                 std::to_string(ids.size()) + " > " + std::to_string(data_.max_tiers) + ")");
        }
        std::vector<std::size_t> stack;
        stack.reserve(ids.size());
        for (std::size_t l = 0; l < ids.size(); ++l) {
            auto it = container_index_.find(ids[l]);
            if (it == container_index_.end()) {
                fail("unknown container in yard " + quoted(ids[l]));
            }
            const std::size_t c = it->second;
            if (positions_[c].stack != kUnplaced) {
                fail("duplicate yard placement of container " + quoted(ids[l]));
            }
            positions_[c] = StackPosition{k, l};
            stack.push_back(c);
        }
        stacks_.push_back(std::move(stack));
    }
    for (std::size_t c = 0; c < positions_.size(); ++c) {
        if (positions_[c].stack == kUnplaced) {
            fail("container " + quoted(data_.containers[c].id) + " is not placed in the yard");
        }
    }

    slot_offsets_.reserve(data_.wagons.size());
    for (std::size_t w = 0; w < data_.wagons.size(); ++w) {
        const Wagon& wagon = data_.wagons[w];
        if (!wagon_index_.emplace(wagon.id, w).second) {
            fail("duplicate wagon id " + quoted(wagon.id));
        }
        if (wagon.max_weight < 0) {
            fail("negative max weight for wagon " + quoted(wagon.id));
        }
        if (wagon.configs.empty()) {
            fail("wagon " + quoted(wagon.id) + " has no weight configuration");
        }
        for (std::size_t b = 0; b < wagon.configs.size(); ++b) {
            const auto& limits = wagon.configs[b].per_slot_max;
            if (limits.size() != wagon.slots.size()) {
                fail("wagon " + quoted(wagon.id) + " config " + std::to_string(b) + " has " +
                     std::to_string(limits.size()) + " limits for " +
                     std::to_string(wagon.slots.size()) + " slots");
            }
            for (Mass limit : limits) {
                if (limit < 0) {
                    fail("negative slot limit in wagon " + quoted(wagon.id));
                }
            }
        }
        slot_offsets_.push_back(total_slots_);
        total_slots_ += wagon.slots.size();
    }
}

std::optional<std::size_t> Instance::find_container(const std::string& id) const {
    auto it = container_index_.find(id);
    if (it == container_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Instance::find_wagon(const std::string& id) const {
    auto it = wagon_index_.find(id);
    if (it == wagon_index_.end()) return std::nullopt;
    return it->second;
}

int Instance::total_container_teu() const {
    int total = 0;
    for (const auto& c : data_.containers) total += teu(c.length);
    return total;
}

int Instance::total_slot_teu() const {
    int total = 0;
    for (const auto& w : data_.wagons) {
        for (const auto& s : w.slots) total += teu(s.length);
    }
    return total;
}

Money Instance::total_value() const {
    return std::accumulate(data_.containers.begin(), data_.containers.end(), Money{0},
                           [](Money acc, const Container& c) { return acc + c.value; });
}

std::vector<BlockingPair> derive_blocking_pairs(const Instance& instance) {
    std::vector<BlockingPair> pairs;
    for (const auto& stack : instance.stacks()) {
        for (std::size_t lo = 0; lo < stack.size(); ++lo) {
            for (std::size_t hi = lo + 1; hi < stack.size(); ++hi) {
                pairs.push_back(BlockingPair{stack[lo], stack[hi]});
            }
        }
    }
    return pairs;
}

std::size_t linear_index(const Instance& instance, std::size_t stack, std::size_t tier) {
    if (stack >= instance.stack_count() || tier >= instance.stack_height(stack)) {
        throw std::out_of_range("linear_index: no container at stack " + std::to_string(stack) +
                                ", tier " + std::to_string(tier));
    }
    return static_cast<std::size_t>(instance.max_tiers()) * stack + tier;
}

StackPosition grid_position(const Instance& instance, std::size_t index) {
    const auto tiers = static_cast<std::size_t>(instance.max_tiers());
    StackPosition pos{index / tiers, index % tiers};
    if (pos.stack >= instance.stack_count() || pos.tier >= instance.stack_height(pos.stack)) {
        throw std::out_of_range("grid_position: index " + std::to_string(index) +
                                " is not an occupied position");
    }
    return pos;
}

}  // namespace tlo
