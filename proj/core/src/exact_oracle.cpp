#include "tlo/exact_oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include "solution_json.hpp"
#include "tlo/errors.hpp"

namespace tlo {
namespace {

struct SlotRef {
    std::size_t wagon;
    std::size_t slot;
    ContainerLength length;
};

std::vector<SlotRef> all_slots(const Instance& instance) {
    std::vector<SlotRef> out;
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        const auto& slots = instance.wagon(w).slots;
        for (std::size_t s = 0; s < slots.size(); ++s) out.push_back({w, s, slots[s].length});
    }
    return out;
}

class Enumerator {
public:
    Enumerator(const Instance& instance, const std::function<void(const Solution&)>& visit)
        : instance_(instance),
          visit_(visit),
          slots_(all_slots(instance)),
          current_(Solution::empty(instance)),
          used_container_(instance.container_count(), false),
          used_slot_(slots_.size(), false) {}

    EnumerationStats run(EnumerationOrder order) {
        if (order == EnumerationOrder::SlotMajor) {
            slot_major(0);
        } else {
            container_major(0);
        }
        return stats_;
    }

private:
    void slot_major(std::size_t i) {
        if (i == slots_.size()) {
            configs(0);
            return;
        }
        slot_major(i + 1);
        const SlotRef& ref = slots_[i];
        for (std::size_t c = 0; c < instance_.container_count(); ++c) {
            if (used_container_[c] || instance_.container(c).length != ref.length) continue;
            used_container_[c] = true;
            current_.placement[c] = Placement{ref.wagon, ref.slot};
            slot_major(i + 1);
            current_.placement[c].reset();
            used_container_[c] = false;
        }
    }

    void container_major(std::size_t c) {
        if (c == instance_.container_count()) {
            configs(0);
            return;
        }
        container_major(c + 1);
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            if (used_slot_[i] || slots_[i].length != instance_.container(c).length) continue;
            used_slot_[i] = true;
            current_.placement[c] = Placement{slots_[i].wagon, slots_[i].slot};
            container_major(c + 1);
            current_.placement[c].reset();
            used_slot_[i] = false;
        }
    }

    void configs(std::size_t w) {
        if (w == instance_.wagon_count()) {
            ++stats_.candidates;
            if (is_feasible(instance_, current_)) {
                ++stats_.feasible;
                visit_(current_);
            }
            return;
        }
        for (std::size_t b = 0; b < instance_.wagon(w).configs.size(); ++b) {
            current_.config[w] = b;
            configs(w + 1);
        }
        current_.config[w].reset();
    }

    const Instance& instance_;
    const std::function<void(const Solution&)>& visit_;
    std::vector<SlotRef> slots_;
    Solution current_;
    std::vector<bool> used_container_;
    std::vector<bool> used_slot_;
    EnumerationStats stats_;
};

using CanonicalKey =
    std::pair<std::vector<std::tuple<std::string, std::string, std::size_t>>, std::vector<std::size_t>>;

CanonicalKey canonical_key(const Instance& instance, const Solution& s) {
    CanonicalKey key;
    for (std::size_t c = 0; c < s.placement.size(); ++c) {
        if (const auto& p = s.placement[c]) {
            key.first.emplace_back(instance.container(c).id, instance.wagon(p->wagon).id, p->slot);
        }
    }
    std::sort(key.first.begin(), key.first.end());
    for (const auto& b : s.config) key.second.push_back(b.value_or(static_cast<std::size_t>(-1)));
    return key;
}

}  // namespace

double estimate_search_space(const Instance& instance) {
    double estimate = 1.0;
    for (const auto& wagon : instance.wagons()) {
        estimate *= static_cast<double>(wagon.configs.size());
        for (const auto& slot : wagon.slots) {
            const auto compatible = std::count_if(
                instance.containers().begin(), instance.containers().end(),
                [&](const Container& c) { return c.length == slot.length; });
            estimate *= static_cast<double>(compatible + 1);
        }
    }
    return estimate;
}

EnumerationStats for_each_feasible(const Instance& instance,
                                   const std::function<void(const Solution&)>& visit,
                                   EnumerationOrder order, double limit) {
    const double estimate = estimate_search_space(instance);
    if (estimate > limit) {
        char message[96];
        std::snprintf(message, sizeof message, "search space estimate %.3g exceeds budget %.3g", estimate, limit);
        throw BudgetExceeded(message, estimate);
    }
    Enumerator enumerator(instance, visit);
    return enumerator.run(order);
}

bool canonical_less(const Instance& instance, const Solution& a, const Solution& b) {
    return canonical_key(instance, a) < canonical_key(instance, b);
}

OracleResult enumerate_optima(const Instance& instance, double limit, EnumerationOrder order) {
    OracleResult result;
    bool any = false;
    const auto stats = for_each_feasible(
        instance,
        [&](const Solution& s) {
            const Money obj = objective_shifted(instance, s);
            if (!any || obj < result.optimum) {
                any = true;
                result.optimum = obj;
                result.optimal_solutions.clear();
            }
            if (obj == result.optimum) result.optimal_solutions.push_back(s);
        },
        order, limit);
    result.enumerated = stats.feasible;
    result.search_space = stats.candidates;

    std::vector<std::pair<CanonicalKey, Solution>> keyed;
    keyed.reserve(result.optimal_solutions.size());
    for (auto& s : result.optimal_solutions) keyed.emplace_back(canonical_key(instance, s), std::move(s));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    result.optimal_solutions.clear();
    for (auto& [_, s] : keyed) result.optimal_solutions.push_back(std::move(s));
    return result;
}

SolverCheck verify_solver(const Instance& instance, const SaResult& result, double limit) {
    const OracleResult oracle = enumerate_optima(instance, limit);
    SolverCheck check;
    check.optimum = oracle.optimum;
    check.gap = result.best_report.objective_shifted - oracle.optimum;
    check.is_optimal = check.gap == 0;
    return check;
}

std::string oracle_report_json(const Instance& instance, const OracleResult& result) {
    detail::ordered_json doc;
    doc["optimum"] = result.optimum;
    doc["count_feasible"] = result.enumerated;
    detail::ordered_json optima = detail::ordered_json::array();
    for (const auto& s : result.optimal_solutions) {
        optima.push_back(detail::solution_to_json(instance, s));
    }
    doc["optima"] = std::move(optima);
    return doc.dump(2) + "\n";
}

}  // namespace tlo
