#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlo/evaluation.hpp"
#include "tlo/instance.hpp"
#include "tlo/rng.hpp"

namespace tlo {

struct SaParams {
    double t_initial = 1000.0;
    double t_final = 1e-3;
    double cooling_rate = 0.95;
    int iters_per_level = 100;
    std::uint64_t seed = 0;
    int max_neighbor_retries = 50;

    // Throws std::invalid_argument.
    void validate() const;

    // ceil(log(t_final / t_initial) / log(cooling_rate)).
    std::size_t level_count() const;
};

enum class MoveKind : std::uint8_t { Swap = 0, Relocate = 1, Config = 2 };

struct MoveCounters {
    std::array<std::uint64_t, 3> selected{};  // every draw of a move type
    std::array<std::uint64_t, 3> produced{};  // draws that yielded the returned neighbor
};

struct Neighbor {
    Solution solution;
    std::optional<MoveKind> kind;  // empty when retries ran out
    int attempts = 0;
    bool changed = false;
};

// Empty plan; every wagon gets the configuration with the largest total
// per-slot limit (lowest index on ties).
Solution initial_solution(const Instance& instance);

MoveKind pick_move_kind(Rng& rng);

// Draws a move type uniformly, builds a candidate and keeps it if it is
// feasible; otherwise tries again, up to `max_retries` draws. Returns the
// current plan unchanged when every attempt failed.
//
//   Swap      two distinct containers: assigned<->assigned exchange slots,
//             assigned<->unassigned hands the slot over; if neither is
//             loaded the first is inserted into a random empty slot of its
//             length.
//   Relocate  a loaded container moves to a random empty slot of its length
//             or is unloaded (each option equally likely).
//   Config    a wagon with several configurations switches to another one.
Neighbor generate_neighbor(const Instance& instance, const Solution& current, Rng& rng,
                           int max_retries, MoveCounters* counters = nullptr);

// Metropolis rule: always for delta <= 0, else with probability
// exp(-delta / temperature).
bool accept(double delta, double temperature, Rng& rng);

struct TraceRow {
    std::size_t level = 0;
    double temperature = 0.0;
    Money current_obj = 0;
    Money best_obj = 0;
    std::size_t accepted = 0;

    bool operator==(const TraceRow&) const = default;
};

struct SaResult {
    Solution best_solution;
    EvaluationReport best_report;
    std::vector<TraceRow> trace;
    double wall_time = 0.0;  // seconds
    std::uint64_t evaluations = 0;
    std::uint64_t seed = 0;
    MoveCounters moves;
};

// Geometric-cooling annealing over feasible plans, minimizing the shifted
// objective. Neighbor draws and acceptance draws use split streams 0 and 1
// of params.seed, so runs are reproducible across platforms.
SaResult solve(const Instance& instance, const SaParams& params);

// Runs seeds params.seed .. params.seed + runs - 1 concurrently and returns
// the best result (lowest seed on ties).
SaResult solve_runs(const Instance& instance, const SaParams& params, int runs);

// Columns: level,temperature,current_obj,best_obj,accepted
std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace tlo
