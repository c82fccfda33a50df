#include "tlo/model_stats.hpp"

#include <cstdio>

#include "json_util.hpp"

namespace tlo {
namespace {

double reduction(std::int64_t a, std::int64_t b) {
    return a == 0 ? 0.0 : 100.0 * (1.0 - static_cast<double>(b) / static_cast<double>(a));
}

detail::ordered_json to_json(const ModelStats& s) {
    detail::ordered_json j;
    j["model"] = s.model == ModelKind::A ? "A" : "B";
    j["vars"] = {{"x", s.vars.assignment},
                 {"t", s.vars.config},
                 {"y", s.vars.rehandle},
                 {"total", s.vars.total()}};
    j["constraints"] = {{"assign_once", s.constraints.assign_once},
                        {"slot_once", s.constraints.slot_once},
                        {"one_config", s.constraints.one_config},
                        {"slot_weight", s.constraints.slot_weight},
                        {"wagon_weight", s.constraints.wagon_weight},
                        {"train_weight", s.constraints.train_weight},
                        {"rehandle_link", s.constraints.rehandle_link},
                        {"total", s.constraints.total()}};
    return j;
}

}  // namespace

ModelStats count_model_b(const Instance& instance) {
    ModelStats stats;
    stats.model = ModelKind::B;
    for (const auto& wagon : instance.wagons()) {
        for (const auto& slot : wagon.slots) {
            for (const auto& c : instance.containers()) {
                if (c.length == slot.length) ++stats.vars.assignment;
            }
        }
        stats.vars.config += static_cast<std::int64_t>(wagon.configs.size());
    }
    const auto slots = static_cast<std::int64_t>(instance.total_slots());
    const auto wagons = static_cast<std::int64_t>(instance.wagon_count());
    stats.constraints.assign_once = static_cast<std::int64_t>(instance.container_count());
    stats.constraints.slot_once = slots;
    stats.constraints.one_config = wagons;
    stats.constraints.slot_weight = slots;
    stats.constraints.wagon_weight = wagons;
    stats.constraints.train_weight = 1;
    return stats;
}

ModelStats count_model_a(const Instance& instance) {
    ModelStats stats = count_model_b(instance);
    stats.model = ModelKind::A;
    const auto wagons = static_cast<std::int64_t>(instance.wagon_count());
    stats.vars.rehandle = static_cast<std::int64_t>(instance.container_count()) * wagons;
    std::int64_t pairs = 0;
    for (const auto& stack : instance.stacks()) {
        const auto h = static_cast<std::int64_t>(stack.size());
        pairs += h * (h - 1) / 2;
    }
    stats.constraints.rehandle_link = pairs * wagons;
    return stats;
}

ModelComparison compare_models(const Instance& instance) {
    ModelComparison cmp;
    cmp.a = count_model_a(instance);
    cmp.b = count_model_b(instance);
    cmp.var_reduction_pct = reduction(cmp.a.vars.total(), cmp.b.vars.total());
    cmp.constraint_reduction_pct = reduction(cmp.a.constraints.total(), cmp.b.constraints.total());
    return cmp;
}

std::string comparison_markdown(const ModelComparison& cmp) {
    std::string out;
    char buf[256];
    out += "| Model | # variables | # constraints |\n";
    out += "|---|---:|---:|\n";
    std::snprintf(buf, sizeof buf, "| A (Conventional) | %lld | %lld |\n",
                  static_cast<long long>(cmp.a.vars.total()),
                  static_cast<long long>(cmp.a.constraints.total()));
    out += buf;
    std::snprintf(buf, sizeof buf, "| B (Compact) | %lld | %lld |\n",
                  static_cast<long long>(cmp.b.vars.total()),
                  static_cast<long long>(cmp.b.constraints.total()));
    out += buf;
    out += "\n| Category | A | B |\n|---|---:|---:|\n";
    auto row = [&](const char* name, std::int64_t a, std::int64_t b) {
        std::snprintf(buf, sizeof buf, "| %s | %lld | %lld |\n", name, static_cast<long long>(a),
                      static_cast<long long>(b));
        out += buf;
    };
    row("x (assignment)", cmp.a.vars.assignment, cmp.b.vars.assignment);
    row("t (configuration)", cmp.a.vars.config, cmp.b.vars.config);
    row("y (rehandle)", cmp.a.vars.rehandle, cmp.b.vars.rehandle);
    row("assign once", cmp.a.constraints.assign_once, cmp.b.constraints.assign_once);
    row("slot once", cmp.a.constraints.slot_once, cmp.b.constraints.slot_once);
    row("one config", cmp.a.constraints.one_config, cmp.b.constraints.one_config);
    row("slot weight", cmp.a.constraints.slot_weight, cmp.b.constraints.slot_weight);
    row("wagon weight", cmp.a.constraints.wagon_weight, cmp.b.constraints.wagon_weight);
    row("train weight", cmp.a.constraints.train_weight, cmp.b.constraints.train_weight);
    row("rehandle link (big-M)", cmp.a.constraints.rehandle_link, cmp.b.constraints.rehandle_link);
    std::snprintf(buf, sizeof buf, "\nvariable reduction: %.2f%%\nconstraint reduction: %.2f%%\n",
                  cmp.var_reduction_pct, cmp.constraint_reduction_pct);
    out += buf;
    return out;
}

std::string comparison_json(const ModelComparison& cmp) {
    detail::ordered_json j;
    j["stats_a"] = to_json(cmp.a);
    j["stats_b"] = to_json(cmp.b);
    j["var_reduction_pct"] = cmp.var_reduction_pct;
    j["constraint_reduction_pct"] = cmp.constraint_reduction_pct;
    return j.dump(2) + "\n";
}

}  // namespace tlo
