#include "tlo/sa_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>
#include <thread>

namespace tlo {
namespace {

// Train-wide slot numbers that are empty and match `length`.
std::vector<Placement> empty_slots(const Instance& instance, const Solution& solution,
                                   ContainerLength length) {
    std::vector<bool> occupied(instance.total_slots(), false);
    for (const auto& p : solution.placement) {
        if (p) occupied[instance.slot_offset(p->wagon) + p->slot] = true;
    }
    std::vector<Placement> out;
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        const auto& slots = instance.wagon(w).slots;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (!occupied[instance.slot_offset(w) + s] && slots[s].length == length) {
                out.push_back(Placement{w, s});
            }
        }
    }
    return out;
}

bool try_insert(const Instance& instance, Solution& candidate, std::size_t c, Rng& rng) {
    const auto free = empty_slots(instance, candidate, instance.container(c).length);
    if (free.empty()) return false;
    candidate.placement[c] = free[rng.index(free.size())];
    return true;
}

bool apply_swap(const Instance& instance, Solution& candidate, Rng& rng) {
    const std::size_t n = instance.container_count();
    if (n == 0) return false;
    const std::size_t first = rng.index(n);
    if (n == 1) {
        return !candidate.placement[first] && try_insert(instance, candidate, first, rng);
    }
    std::size_t second = rng.index(n - 1);
    if (second >= first) ++second;

    auto& a = candidate.placement[first];
    auto& b = candidate.placement[second];
    if (!a && !b) return try_insert(instance, candidate, first, rng);
    std::swap(a, b);
    return true;
}

bool apply_relocate(const Instance& instance, Solution& candidate, Rng& rng) {
    std::vector<std::size_t> loaded;
    for (std::size_t c = 0; c < candidate.placement.size(); ++c) {
        if (candidate.placement[c]) loaded.push_back(c);
    }
    if (loaded.empty()) return false;
    const std::size_t c = loaded[rng.index(loaded.size())];
    const auto free = empty_slots(instance, candidate, instance.container(c).length);
    // Option free.size() means "unload".
    const std::size_t choice = rng.index(free.size() + 1);
    if (choice == free.size()) {
        candidate.placement[c].reset();
    } else {
        candidate.placement[c] = free[choice];
    }
    return true;
}

bool apply_config(const Instance& instance, Solution& candidate, Rng& rng) {
    std::vector<std::size_t> eligible;
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        if (instance.wagon(w).configs.size() > 1) eligible.push_back(w);
    }
    if (eligible.empty()) return false;
    const std::size_t w = eligible[rng.index(eligible.size())];
    const std::size_t options = instance.wagon(w).configs.size();
    auto& current = candidate.config[w];
    if (!current) {
        current = rng.index(options);
    } else {
        std::size_t next = rng.index(options - 1);
        if (next >= *current) ++next;
        current = next;
    }
    return true;
}

}  // namespace

void SaParams::validate() const {
    if (!(t_initial > 0.0) || !(t_final > 0.0)) {
        throw std::invalid_argument("temperatures must be positive");
    }
    if (!(t_final < t_initial)) {
        throw std::invalid_argument("t_final must be below t_initial");
    }
    if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) {
        throw std::invalid_argument("cooling_rate must lie in (0, 1)");
    }
    if (iters_per_level < 1) {
        throw std::invalid_argument("iters_per_level must be positive");
    }
    if (max_neighbor_retries < 1) {
        throw std::invalid_argument("max_neighbor_retries must be positive");
    }
}

std::size_t SaParams::level_count() const {
    return static_cast<std::size_t>(
        std::ceil(std::log(t_final / t_initial) / std::log(cooling_rate)));
}

Solution initial_solution(const Instance& instance) {
    Solution s = Solution::empty(instance);
    for (std::size_t w = 0; w < instance.wagon_count(); ++w) {
        const auto& configs = instance.wagon(w).configs;
        std::size_t best = 0;
        Mass best_total = -1;
        for (std::size_t b = 0; b < configs.size(); ++b) {
            Mass total = 0;
            for (Mass m : configs[b].per_slot_max) total += m;
            if (total > best_total) {
                best = b;
                best_total = total;
            }
        }
        s.config[w] = best;
    }
    return s;
}

MoveKind pick_move_kind(Rng& rng) { return static_cast<MoveKind>(rng.index(3)); }

Neighbor generate_neighbor(const Instance& instance, const Solution& current, Rng& rng,
                           int max_retries, MoveCounters* counters) {
    for (int attempt = 1; attempt <= max_retries; ++attempt) {
        const MoveKind kind = pick_move_kind(rng);
        if (counters) ++counters->selected[static_cast<std::size_t>(kind)];

        Solution candidate = current;
        bool built = false;
        switch (kind) {
            case MoveKind::Swap: built = apply_swap(instance, candidate, rng); break;
            case MoveKind::Relocate: built = apply_relocate(instance, candidate, rng); break;
            case MoveKind::Config: built = apply_config(instance, candidate, rng); break;
        }
        if (!built || candidate == current || !is_feasible(instance, candidate)) continue;

        if (counters) ++counters->produced[static_cast<std::size_t>(kind)];
        return Neighbor{std::move(candidate), kind, attempt, true};
    }
    return Neighbor{current, std::nullopt, max_retries, false};
}

bool accept(double delta, double temperature, Rng& rng) {
    if (delta <= 0.0) return true;
    return rng.uniform01() < std::exp(-delta / temperature);
}

SaResult solve(const Instance& instance, const SaParams& params) {
    params.validate();
    const auto started = std::chrono::steady_clock::now();

    const Rng root(params.seed);
    Rng neighbor_rng = root.split(0);
    Rng accept_rng = root.split(1);

    SaResult result;
    result.seed = params.seed;

    Solution current = initial_solution(instance);
    Money current_obj = objective_shifted(instance, current);
    Solution best = current;
    Money best_obj = current_obj;

    double temperature = params.t_initial;
    std::size_t level = 0;
    while (temperature > params.t_final) {
        std::size_t accepted = 0;
        for (int i = 0; i < params.iters_per_level; ++i) {
            Neighbor next = generate_neighbor(instance, current, neighbor_rng,
                                              params.max_neighbor_retries, &result.moves);
            result.evaluations += static_cast<std::uint64_t>(next.attempts);
            if (!next.changed) continue;

            const Money next_obj = objective_shifted(instance, next.solution);
            if (accept(static_cast<double>(next_obj - current_obj), temperature, accept_rng)) {
                current = std::move(next.solution);
                current_obj = next_obj;
                ++accepted;
            }
            if (current_obj < best_obj) {
                best = current;
                best_obj = current_obj;
            }
        }
        result.trace.push_back(TraceRow{level, temperature, current_obj, best_obj, accepted});
        temperature *= params.cooling_rate;
        ++level;
    }

    result.best_solution = std::move(best);
    result.best_report = evaluate(instance, result.best_solution);
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

SaResult solve_runs(const Instance& instance, const SaParams& params, int runs) {
    if (runs < 1) throw std::invalid_argument("runs must be positive");
    params.validate();

    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<SaResult> results;
    results.reserve(static_cast<std::size_t>(runs));
    for (int start = 0; start < runs; start += static_cast<int>(width)) {
        std::vector<std::future<SaResult>> batch;
        for (int r = start; r < std::min(runs, start + static_cast<int>(width)); ++r) {
            SaParams p = params;
            p.seed = params.seed + static_cast<std::uint64_t>(r);
            batch.push_back(std::async(std::launch::async, [&instance, p] { return solve(instance, p); }));
        }
        for (auto& f : batch) results.push_back(f.get());
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        const Money a = results[i].best_report.objective_shifted;
        const Money b = results[best].best_report.objective_shifted;
        if (a < b || (a == b && results[i].seed < results[best].seed)) best = i;
    }
    return std::move(results[best]);
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
    std::string out = "level,temperature,current_obj,best_obj,accepted\n";
    char buf[160];
    for (const auto& row : trace) {
        std::snprintf(buf, sizeof buf, "%zu,%.10g,%lld,%lld,%zu\n", row.level, row.temperature,
                      static_cast<long long>(row.current_obj), static_cast<long long>(row.best_obj),
                      row.accepted);
        out += buf;
    }
    return out;
}

}  // namespace tlo
