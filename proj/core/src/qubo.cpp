#include "tlo/qubo.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "tlo/errors.hpp"

namespace tlo {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw QuboError("coefficient overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw QuboError("coefficient overflow");
    return r;
}

Mass ceil_div(Mass a, Mass b) { return (a + b - 1) / b; }

// Linear form sum coeff_i * bit_i + constant.
struct LinearExpr {
    std::vector<std::pair<std::size_t, std::int64_t>> terms;
    std::int64_t constant = 0;
};

// Accumulates a quadratic pseudo-boolean function. Only constants, linear
// and pairwise terms can be added, so the result is a QUBO by construction.
class QuadraticAccumulator {
public:
    void constant(std::int64_t v) { offset_ = checked_add(offset_, v); }

    void linear(std::size_t i, std::int64_t v) { add(i, i, v); }

    void pairwise(std::size_t i, std::size_t j, std::int64_t v) {
        if (i > j) std::swap(i, j);
        add(i, j, v);  // i == j collapses to linear since b*b = b
    }

    // weight * (expr)^2, expanded.
    void squared(LinearExpr expr, std::int64_t weight) {
        std::sort(expr.terms.begin(), expr.terms.end());
        std::vector<std::pair<std::size_t, std::int64_t>> merged;
        for (const auto& [i, a] : expr.terms) {
            if (!merged.empty() && merged.back().first == i) {
                merged.back().second = checked_add(merged.back().second, a);
            } else {
                merged.emplace_back(i, a);
            }
        }
        const std::int64_t k = expr.constant;
        constant(checked_mul(weight, checked_mul(k, k)));
        for (std::size_t p = 0; p < merged.size(); ++p) {
            const auto [i, a] = merged[p];
            // a^2 b + 2 k a b
            linear(i, checked_mul(weight, checked_add(checked_mul(a, a), checked_mul(2 * k, a))));
            for (std::size_t q = p + 1; q < merged.size(); ++q) {
                const auto [j, b] = merged[q];
                pairwise(i, j, checked_mul(weight, checked_mul(2 * a, b)));
            }
        }
    }

    void finish(QuboModel& model) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
        }
        model.coefficients = std::move(terms_);
        model.offset = offset_;
    }

private:
    void add(std::size_t i, std::size_t j, std::int64_t v) {
        auto& slot = terms_[{i, j}];
        slot = checked_add(slot, v);
    }

    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> terms_;
    std::int64_t offset_ = 0;
};

std::size_t register_width(std::int64_t bound) {
    return bound <= 0 ? 0 : static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(bound)));
}

// Discretized masses shared by build and encode.
struct Discretized {
    std::vector<Mass> weight;                        // per container, rounded up
    std::vector<std::vector<std::vector<Mass>>> limit;  // [wagon][config][slot], rounded down
    std::vector<Mass> wagon_cap;
    Mass train_cap = 0;
};

Discretized discretize(const Instance& instance, Mass unit) {
    if (unit < 1) throw QuboError("weight unit must be positive");
    Discretized d;
    for (const auto& c : instance.containers()) d.weight.push_back(ceil_div(c.weight, unit));
    for (const auto& w : instance.wagons()) {
        std::vector<std::vector<Mass>> per_config;
        for (const auto& b : w.configs) {
            std::vector<Mass> limits;
            for (Mass m : b.per_slot_max) limits.push_back(m / unit);
            per_config.push_back(std::move(limits));
        }
        d.limit.push_back(std::move(per_config));
        d.wagon_cap.push_back(w.max_weight / unit);
    }
    d.train_cap = instance.train_max_weight() / unit;
    return d;
}

std::string family_key(PenaltyFamily f) { return std::string(to_string(f)); }

}  // namespace

std::string_view to_string(PenaltyFamily family) {
    switch (family) {
        case PenaltyFamily::AssignOnce: return "assign_once";
        case PenaltyFamily::SlotOnce: return "slot_once";
        case PenaltyFamily::OneConfig: return "one_config";
        case PenaltyFamily::SlotWeight: return "slot_weight";
        case PenaltyFamily::WagonWeight: return "wagon_weight";
        case PenaltyFamily::TrainWeight: return "train_weight";
    }
    return "unknown";
}

std::optional<std::size_t> VariableMap::assignment_index(std::size_t container, std::size_t wagon,
                                                         std::size_t slot) const {
    if (container >= assignment_lookup.size() || wagon >= slot_offsets.size()) return std::nullopt;
    const std::size_t global = slot_offsets[wagon] + slot;
    if (global >= assignment_lookup[container].size()) return std::nullopt;
    const auto v = assignment_lookup[container][global];
    if (v < 0) return std::nullopt;
    return static_cast<std::size_t>(v);
}

std::optional<std::size_t> VariableMap::config_index(std::size_t wagon, std::size_t config) const {
    if (wagon >= config_lookup.size() || config >= config_lookup[wagon].size()) return std::nullopt;
    const auto v = config_lookup[wagon][config];
    if (v < 0) return std::nullopt;
    return static_cast<std::size_t>(v);
}

std::int64_t default_penalty(const Instance& instance) {
    const auto pairs = static_cast<std::int64_t>(derive_blocking_pairs(instance).size());
    return checked_add(checked_add(checked_mul(instance.rehandle_unit_cost(), pairs),
                                   instance.total_value()),
                       1);
}

QuboBuild build_qubo(const Instance& instance, const QuboOptions& options) {
    const Discretized disc = discretize(instance, options.weight_unit);

    QuboBuild out;
    QuboModel& model = out.model;
    VariableMap& map = out.map;
    map.weight_unit = options.weight_unit;
    model.weight_unit = options.weight_unit;

    const std::int64_t base = options.penalty.value_or(default_penalty(instance));
    for (auto f : {PenaltyFamily::AssignOnce, PenaltyFamily::SlotOnce, PenaltyFamily::OneConfig,
                   PenaltyFamily::SlotWeight, PenaltyFamily::WagonWeight, PenaltyFamily::TrainWeight}) {
        auto it = options.family_penalties.find(f);
        const std::int64_t p = it == options.family_penalties.end() ? base : it->second;
        if (p <= 0) throw QuboError("penalty for " + family_key(f) + " must be positive");
        model.penalties[f] = p;
    }

    // Assignment variables, container-major.
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) map.slot_offsets.push_back(instance.slot_offset(w));
    map.assignment_lookup.assign(instance.container_count(),
                                 std::vector<std::int64_t>(instance.total_slots(), -1));
    for (std::size_t c = 0; c < instance.container_count(); ++c) {
        for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
            const auto& slots = instance.wagon(w).slots;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (slots[s].length != instance.container(c).length) continue;
                map.assignment_lookup[c][instance.slot_offset(w) + s] =
                    static_cast<std::int64_t>(map.entries.size());
                VariableRole role;
                role.kind = VariableRole::Kind::Assignment;
                role.container = c;
                role.wagon = w;
                role.slot = s;
                map.entries.push_back(role);
            }
        }
    }

    map.config_lookup.resize(instance.wagon_count());
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        for (std::size_t b = 0; b < instance.wagon(w).configs.size(); ++b) {
            map.config_lookup[w].push_back(static_cast<std::int64_t>(map.entries.size()));
            VariableRole role;
            role.kind = VariableRole::Kind::Config;
            role.wagon = w;
            role.config = b;
            map.entries.push_back(role);
        }
    }

    auto add_register = [&](PenaltyFamily family, std::string name, std::size_t subject,
                            std::size_t slot, std::int64_t bound) {
        const std::size_t width = register_width(bound);
        if (width > options.max_slack_bits) {
            throw QuboError("slack register " + name + " needs " + std::to_string(width) +
                            " bits (limit " + std::to_string(options.max_slack_bits) +
                            "); use a coarser weight unit");
        }
        SlackRegister reg{family, std::move(name), subject, slot, map.entries.size(), width};
        for (std::size_t bit = 0; bit < width; ++bit) {
            VariableRole role;
            role.kind = VariableRole::Kind::Slack;
            role.register_id = map.slacks.size();
            role.bit = bit;
            map.entries.push_back(role);
        }
        map.slacks.push_back(std::move(reg));
        return map.slacks.size() - 1;
    };
    auto slack_terms = [&](std::size_t reg, LinearExpr& expr) {
        const auto& r = map.slacks[reg];
        for (std::size_t bit = 0; bit < r.width; ++bit) {
            expr.terms.emplace_back(r.first + bit, std::int64_t{1} << bit);
        }
    };

    QuadraticAccumulator acc;

    // Objective: alpha * rehandles - value loaded.
    const std::int64_t alpha = instance.rehandle_unit_cost();
    for (const auto& stack : instance.stacks()) {
        const std::size_t height = stack.size();
        for (std::size_t l = 0; l < height; ++l) {
            const std::size_t c = stack[l];
            const auto blockers = static_cast<std::int64_t>(height - 1 - l);
            for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
                for (std::size_t s = 0; s < instance.wagon(w).slots.size(); ++s) {
                    const auto xi = map.assignment_index(c, w, s);
                    if (!xi) continue;
                    acc.linear(*xi, checked_add(checked_mul(alpha, blockers), -instance.container(c).value));
                    for (std::size_t a = l + 1; a < height; ++a) {
                        for (std::size_t h = 0; h <= w; ++h) {
                            for (std::size_t s2 = 0; s2 < instance.wagon(h).slots.size(); ++s2) {
                                const auto xj = map.assignment_index(stack[a], h, s2);
                                if (xj) acc.pairwise(*xi, *xj, -alpha);
                            }
                        }
                    }
                }
            }
        }
    }

    // Each container at most once.
    for (std::size_t c = 0; c < instance.container_count(); ++c) {
        const auto reg = add_register(PenaltyFamily::AssignOnce, "assign_once:" + instance.container(c).id, c, 0, 1);
        LinearExpr expr;
        for (std::int64_t idx : map.assignment_lookup[c]) {
            if (idx >= 0) expr.terms.emplace_back(static_cast<std::size_t>(idx), 1);
        }
        slack_terms(reg, expr);
        expr.constant = -1;
        acc.squared(std::move(expr), model.penalties[PenaltyFamily::AssignOnce]);
    }

    // Each slot at most one container.
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        for (std::size_t s = 0; s < instance.wagon(w).slots.size(); ++s) {
            const auto reg = add_register(PenaltyFamily::SlotOnce,
                                          "slot_once:" + instance.wagon(w).id + ":" + std::to_string(s), w, s, 1);
            LinearExpr expr;
            for (std::size_t c = 0; c < instance.container_count(); ++c) {
                if (auto xi = map.assignment_index(c, w, s)) expr.terms.emplace_back(*xi, 1);
            }
            slack_terms(reg, expr);
            expr.constant = -1;
            acc.squared(std::move(expr), model.penalties[PenaltyFamily::SlotOnce]);
        }
    }

    // Exactly one configuration per wagon.
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        LinearExpr expr;
        for (std::int64_t idx : map.config_lookup[w]) expr.terms.emplace_back(static_cast<std::size_t>(idx), 1);
        expr.constant = -1;
        acc.squared(std::move(expr), model.penalties[PenaltyFamily::OneConfig]);
    }

    // Slot weight under the chosen configuration.
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        for (std::size_t s = 0; s < instance.wagon(w).slots.size(); ++s) {
            Mass widest = 0;
            for (const auto& limits : disc.limit[w]) widest = std::max(widest, limits[s]);
            const auto reg = add_register(PenaltyFamily::SlotWeight,
                                          "slot_weight:" + instance.wagon(w).id + ":" + std::to_string(s), w, s, widest);
            LinearExpr expr;
            for (std::size_t c = 0; c < instance.container_count(); ++c) {
                if (auto xi = map.assignment_index(c, w, s)) expr.terms.emplace_back(*xi, disc.weight[c]);
            }
            slack_terms(reg, expr);
            for (std::size_t b = 0; b < disc.limit[w].size(); ++b) {
                expr.terms.emplace_back(*map.config_index(w, b), -disc.limit[w][b][s]);
            }
            acc.squared(std::move(expr), model.penalties[PenaltyFamily::SlotWeight]);
        }
    }

    // Wagon capacity.
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        const auto reg = add_register(PenaltyFamily::WagonWeight, "wagon_weight:" + instance.wagon(w).id, w, 0,
                                      disc.wagon_cap[w]);
        LinearExpr expr;
        for (std::size_t c = 0; c < instance.container_count(); ++c) {
            for (std::size_t s = 0; s < instance.wagon(w).slots.size(); ++s) {
                if (auto xi = map.assignment_index(c, w, s)) expr.terms.emplace_back(*xi, disc.weight[c]);
            }
        }
        slack_terms(reg, expr);
        expr.constant = -disc.wagon_cap[w];
        acc.squared(std::move(expr), model.penalties[PenaltyFamily::WagonWeight]);
    }

    // Train capacity.
    {
        const auto reg = add_register(PenaltyFamily::TrainWeight, "train_weight", 0, 0, disc.train_cap);
        LinearExpr expr;
        for (std::size_t c = 0; c < instance.container_count(); ++c) {
            for (std::int64_t idx : map.assignment_lookup[c]) {
                if (idx >= 0) expr.terms.emplace_back(static_cast<std::size_t>(idx), disc.weight[c]);
            }
        }
        slack_terms(reg, expr);
        expr.constant = -disc.train_cap;
        acc.squared(std::move(expr), model.penalties[PenaltyFamily::TrainWeight]);
    }

    model.n = map.entries.size();
    if (model.n == 0) throw QuboError("empty variable map: instance has no placements or wagons");
    acc.finish(model);
    return out;
}

std::int64_t energy_of(const QuboModel& model, const std::vector<std::uint8_t>& bits) {
    if (bits.size() != model.n) {
        throw QuboError("bit vector has " + std::to_string(bits.size()) + " entries, model has " +
                        std::to_string(model.n));
    }
    std::int64_t energy = model.offset;
    for (const auto& [key, value] : model.coefficients) {
        if (bits[key.first] && bits[key.second]) energy += value;
    }
    return energy;
}

std::int64_t flip_delta(const QuboModel& model, const std::vector<std::uint8_t>& bits,
                        std::size_t i) {
    if (bits.size() != model.n || i >= model.n) throw QuboError("flip_delta: index out of range");
    std::int64_t field = 0;
    for (const auto& [key, value] : model.coefficients) {
        if (key.first == i && key.second == i) {
            field += value;
        } else if (key.first == i) {
            if (bits[key.second]) field += value;
        } else if (key.second == i) {
            if (bits[key.first]) field += value;
        }
    }
    return bits[i] ? -field : field;
}

std::vector<std::uint8_t> encode_solution(const VariableMap& map, const Instance& instance,
                                          const Solution& solution) {
    validate_references(instance, solution);
    const Discretized disc = discretize(instance, map.weight_unit);
    std::vector<std::uint8_t> bits(map.entries.size(), 0);

    std::vector<Mass> slot_load(instance.total_slots(), 0);
    std::vector<int> slot_count(instance.total_slots(), 0);
    std::vector<Mass> wagon_load(instance.wagon_count(), 0);
    Mass train_load = 0;
    for (std::size_t c = 0; c < instance.container_count(); ++c) {
        const auto& p = solution.placement[c];
        if (!p) continue;
        const auto xi = map.assignment_index(c, p->wagon, p->slot);
        if (!xi) {
            throw QuboError("container '" + instance.container(c).id +
                            "' is placed in a slot of the wrong length");
        }
        bits[*xi] = 1;
        const std::size_t global = instance.slot_offset(p->wagon) + p->slot;
        slot_load[global] += disc.weight[c];
        ++slot_count[global];
        wagon_load[p->wagon] += disc.weight[c];
        train_load += disc.weight[c];
    }
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        if (const auto& b = solution.config[w]) bits[*map.config_index(w, *b)] = 1;
    }

    for (const auto& reg : map.slacks) {
        std::int64_t residual = 0;
        switch (reg.family) {
            case PenaltyFamily::AssignOnce:
                residual = solution.placement[reg.subject] ? 0 : 1;
                break;
            case PenaltyFamily::SlotOnce:
                residual = 1 - slot_count[instance.slot_offset(reg.subject) + reg.slot];
                break;
            case PenaltyFamily::SlotWeight: {
                const auto& b = solution.config[reg.subject];
                if (!b) throw QuboError("wagon '" + instance.wagon(reg.subject).id + "' has no configuration");
                residual = disc.limit[reg.subject][*b][reg.slot] -
                           slot_load[instance.slot_offset(reg.subject) + reg.slot];
                break;
            }
            case PenaltyFamily::WagonWeight:
                residual = disc.wagon_cap[reg.subject] - wagon_load[reg.subject];
                break;
            case PenaltyFamily::TrainWeight:
                residual = disc.train_cap - train_load;
                break;
            case PenaltyFamily::OneConfig:
                break;
        }
        const std::int64_t capacity = reg.width >= 63 ? std::numeric_limits<std::int64_t>::max()
                                                      : (std::int64_t{1} << reg.width) - 1;
        if (residual < 0 || residual > capacity) {
            throw QuboError("residual " + std::to_string(residual) + " of " + reg.constraint +
                            " is not representable in " + std::to_string(reg.width) +
                            " slack bits (plan infeasible at weight unit " +
                            std::to_string(map.weight_unit) + ")");
        }
        for (std::size_t bit = 0; bit < reg.width; ++bit) {
            bits[reg.first + bit] = static_cast<std::uint8_t>((residual >> bit) & 1);
        }
    }
    return bits;
}

Solution decode_solution(const VariableMap& map, const Instance& instance,
                         const std::vector<std::uint8_t>& bits) {
    if (bits.size() != map.entries.size()) throw QuboError("bit vector length does not match variable map");
    Solution s = Solution::empty(instance);
    std::vector<int> configs_set(instance.wagon_count(), 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (!bits[i]) continue;
        const auto& role = map.entries[i];
        if (role.kind == VariableRole::Kind::Assignment) {
            if (s.placement[role.container]) {
                throw QuboError("container '" + instance.container(role.container).id + "' assigned twice");
            }
            s.placement[role.container] = Placement{role.wagon, role.slot};
        } else if (role.kind == VariableRole::Kind::Config) {
            ++configs_set[role.wagon];
            s.config[role.wagon] = role.config;
        }
    }
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        if (configs_set[w] != 1) s.config[w].reset();
    }
    return s;
}

}  // namespace tlo
